"""Supports, polar decompositions, Douglas division, cyclic generators.

Division here means solving p @ x = y.  In finite dimension the solvability
condition (some c with c^2 x*x >= y*y) is exactly the kernel inclusion
ker(x) <= ker(y), decided through support projections, and the canonical
quotient is y times the pseudoinverse of x.  Everything else in this module
is built from that: partial-isometry division, the single generator of a
finitely generated submodule, and the rank-one form of a finite tensor sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AlgebraMismatchError,
    ConditionViolatedError,
    GradingError,
    NonFaithfulError,
    UnsolvableError,
)
from .graded import GradedElement
from .matcore import (
    DEFAULT_TOL,
    BlockAlgebra,
    Element,
    Tolerances,
    func_calc,
    operator_norm,
    power_pos,
)
from .weights import Weight


def _block_svds(x: Element):
    """Per-block SVDs plus the global largest singular value."""
    svds = [np.linalg.svd(b) for b in x.blocks]
    smax = max(float(s.max()) if s.size else 0.0 for _, s, _ in svds)
    return svds, smax


def _masks(x: Element, svds, smax, tol: Tolerances):
    return [s > tol.rank_rel * smax * n
            for (_, s, _), n in zip(svds, x.algebra.block_dims)]


def right_support(x: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Smallest projection p with x @ p = x (projection onto the row space)."""
    svds, smax = _block_svds(x)
    masks = _masks(x, svds, smax, tol)
    blocks = [vh[m].conj().T @ vh[m] for (_, _, vh), m in zip(svds, masks)]
    return Element(x.algebra, tuple(blocks))


def left_support(x: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Smallest projection p with p @ x = x; equals right_support(x*)."""
    svds, smax = _block_svds(x)
    masks = _masks(x, svds, smax, tol)
    blocks = [u[:, m] @ u[:, m].conj().T for (u, _, _), m in zip(svds, masks)]
    return Element(x.algebra, tuple(blocks))


def pseudo_inverse(x: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Moore-Penrose inverse with the library's support cutoff."""
    svds, smax = _block_svds(x)
    masks = _masks(x, svds, smax, tol)
    blocks = [(vh[m].conj().T / s[m]) @ u[:, m].conj().T
              for (u, s, vh), m in zip(svds, masks)]
    return Element(x.algebra, tuple(blocks))


@dataclass(frozen=True)
class PolarDecomposition:
    """x = isometry @ positive (side="right") or positive @ isometry ("left")."""

    isometry: Element
    positive: Element
    side: str

    def reconstruct(self) -> Element:
        if self.side == "right":
            return self.isometry @ self.positive
        return self.positive @ self.isometry


def polar_right(x: Element, tol: Tolerances = DEFAULT_TOL) -> PolarDecomposition:
    """x = u @ z with z = (x*x)^(1/2) and u a partial isometry.

    Singular directions below the support cutoff are excluded from u, so
    u*u is exactly the support of z and uu* the left support of x.
    """
    svds, smax = _block_svds(x)
    masks = _masks(x, svds, smax, tol)
    iso, pos = [], []
    for (u, s, vh), m in zip(svds, masks):
        iso.append(u[:, m] @ vh[m])
        pos.append((vh.conj().T * np.where(m, s, 0.0)) @ vh)
    return PolarDecomposition(Element(x.algebra, tuple(iso)),
                              Element(x.algebra, tuple(pos)), "right")


def polar_left(x: Element, tol: Tolerances = DEFAULT_TOL) -> PolarDecomposition:
    """x = z @ u with z = (xx*)^(1/2); u is the same partial isometry part."""
    svds, smax = _block_svds(x)
    masks = _masks(x, svds, smax, tol)
    iso, pos = [], []
    for (u, s, vh), m in zip(svds, masks):
        iso.append(u[:, m] @ vh[m])
        pos.append((u * np.where(m, s, 0.0)) @ u.conj().T)
    return PolarDecomposition(Element(x.algebra, tuple(iso)),
                              Element(x.algebra, tuple(pos)), "left")


@dataclass(frozen=True)
class DivisionResult:
    """Quotient of p @ x = y with its norm (the optimal majorization constant)."""

    quotient: Element
    minimal_c: float
    residual: float


def douglas_divide(x: Element, y: Element,
                   tol: Tolerances = DEFAULT_TOL) -> DivisionResult:
    """Solve p @ x = y with right support of p inside the left support of x.

    Solvable exactly when ker(x) <= ker(y); the returned quotient is
    y @ pinv(x), its operator norm is the smallest constant c with
    c^2 x*x >= y*y, and its left support equals the left support of y.

    Raises UnsolvableError carrying the best-approximation residual when
    the kernel inclusion fails.
    """
    x._check_compatible(y)
    p = y @ pseudo_inverse(x, tol)
    residual = operator_norm(y - p @ x)
    if residual > tol.eq_bound(operator_norm(y)):
        raise UnsolvableError(
            f"no c satisfies c^2 x*x >= y*y: residual {residual:.3e}",
            residual)
    return DivisionResult(p, operator_norm(p), residual)


def clipped_inverse(eps: float):
    """The bounded inverse t -> 1/t for t >= eps and 0 below, used as f_eps.

    0 always maps to 0, matching the support convention of the power maps.
    """
    eps = float(eps)

    def f(t: float) -> float:
        return 1.0 / t if t >= eps and t > 0.0 else 0.0

    return f


def douglas_ladder(x: Element, y: Element, epsilons=None,
                   tol: Tolerances = DEFAULT_TOL):
    """Approximate the Douglas quotient by y @ f_eps(|x|) @ u* down a ladder.

    Returns [(eps, gap)] with gap the operator-norm distance to the exact
    quotient; the gaps are nonincreasing and reach 0 once eps drops below
    the smallest positive singular value of x.
    """
    exact = douglas_divide(x, y, tol).quotient
    pol = polar_right(x, tol)
    if epsilons is None:
        smax = operator_norm(x)
        top = smax if smax > 0.0 else 1.0
        epsilons = [top * 2.0 ** (-k) for k in range(26)]
    ladder = []
    for eps in epsilons:
        approx = y @ func_calc(pol.positive, clipped_inverse(eps), tol) @ pol.isometry.adjoint()
        ladder.append((float(eps), operator_norm(approx - exact)))
    return ladder


def isometry_divide(x: Element, y: Element,
                    tol: Tolerances = DEFAULT_TOL) -> Element:
    """Partial-isometry quotient when x*x = y*y.

    Returns p with p @ x = y, p*p the left support of x, and p* @ y = x.
    Built from the two polar decompositions, which keeps it well defined
    on degenerate spectra.
    """
    gram_x = x.adjoint() @ x
    gram_y = y.adjoint() @ y
    residual = operator_norm(gram_x - gram_y)
    scale = max(operator_norm(gram_x), operator_norm(gram_y))
    if residual > tol.eq_bound(scale):
        raise ConditionViolatedError(
            f"x*x != y*y: residual {residual:.3e}", residual)
    return polar_right(y, tol).isometry @ polar_right(x, tol).isometry.adjoint()


def graded_divide(x: GradedElement, y: GradedElement,
                  tol: Tolerances = DEFAULT_TOL) -> GradedElement:
    """Graded division: solve p * x = y, with p landing in grading b - a.

    Real parts of the gradings must agree unless y = 0 (a nonzero quotient
    cannot change the real part); the zero quotient is returned with its
    real part clamped into the allowed half-plane.
    """
    a, b = x.grading, y.grading
    if operator_norm(y.data) <= tol.eq_abs:
        g = b - a
        return GradedElement(y.algebra.zero(), complex(max(g.real, 0.0), g.imag))
    if abs(a.real - b.real) > tol.eq_abs:
        raise GradingError(
            f"cannot divide grading {b} data by grading {a} data: "
            "real parts differ and y != 0")
    p = douglas_divide(x.data, y.data, tol).quotient
    return GradedElement(p, b - a)


# -- amplification helpers for the membership certificate ----------------


def _amplified_algebra(algebra: BlockAlgebra, m: int) -> BlockAlgebra:
    return BlockAlgebra(tuple(n * m for n in algebra.block_dims))


def _place(algebra: BlockAlgebra, m: int, entries) -> Element:
    """Element of the m-fold amplification with given (row, col) sub-blocks."""
    big = _amplified_algebra(algebra, m)
    blocks = []
    for k, n in enumerate(algebra.block_dims):
        out = np.zeros((n * m, n * m), dtype=complex)
        for (i, j), el in entries:
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = el.blocks[k]
        blocks.append(out)
    return Element(big, tuple(blocks))


def _extract(big: Element, algebra: BlockAlgebra, m: int, i: int, j: int) -> Element:
    blocks = [b[i * n:(i + 1) * n, j * n:(j + 1) * n]
              for b, n in zip(big.blocks, algebra.block_dims)]
    return Element(algebra, tuple(blocks))


def cyclic_generator(generators, mu: Weight, tol: Tolerances = DEFAULT_TOL):
    """One element generating the same left submodule as a finite family.

    Given u_1..u_m of a common grading a and a faithful weight mu, returns
    (y, q, certificate) where

    * y has grading a, with matrix h^(Im a) @ (sum u_i* u_i)^(1/2),
    * q_i are plain algebra elements with u_i = q_i @ y,
    * certificate_i reproduce y = sum_i certificate_i @ u_i; they are one
      row of a partial isometry in the m-fold amplification, so membership
      of y in the generated submodule is witnessed, not just division.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    a = gens[0].grading
    algebra = gens[0].algebra
    for g in gens[1:]:
        if abs(complex(g.grading) - a) > tol.eq_abs:
            raise GradingError(
                f"generators must share a grading: {g.grading} != {a}")
        if g.algebra.block_dims != algebra.block_dims:
            raise AlgebraMismatchError("generators live in different algebras")
    if mu.algebra.block_dims != algebra.block_dims:
        raise AlgebraMismatchError("weight lives in a different algebra")
    if not mu.faithful:
        raise NonFaithfulError("cyclic generator requires a faithful weight")

    gram = algebra.zero()
    for g in gens:
        gram = gram + g.data.adjoint() @ g.data
    x = power_pos(gram, 0.5, tol)
    y_mat = mu.power(complex(0.0, a.imag), tol) @ x
    y = GradedElement(y_mat, a)

    quotients = [douglas_divide(y_mat, g.data, tol).quotient for g in gens]

    m = len(gens)
    big_y = _place(algebra, m, [((0, 0), y_mat)])
    big_z = _place(algebra, m, [((i, 0), g.data) for i, g in enumerate(gens)])
    big_p = isometry_divide(big_z, big_y, tol)
    certificate = [_extract(big_p, algebra, m, 0, i) for i in range(m)]
    return y, quotients, certificate


def rank1_reduce(pairs, mu: Weight, tol: Tolerances = DEFAULT_TOL):
    """Collapse a finite sum of graded tensor pairs to a single pair.

    For pairs (u_i, v_i) with common gradings (c, a), returns (x, y) with
    x = sum u_i @ q_i at grading c and y the cyclic generator of the right
    factors, so that x @ y = sum u_i @ v_i.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("at least one pair is required")
    lefts = [p[0] for p in pairs]
    rights = [p[1] for p in pairs]
    c = lefts[0].grading
    for u in lefts[1:]:
        if abs(complex(u.grading) - c) > tol.eq_abs:
            raise GradingError(
                f"left factors must share a grading: {u.grading} != {c}")
    y, quotients, _ = cyclic_generator(rights, mu, tol)
    x_mat = lefts[0].algebra.zero()
    for u, q in zip(lefts, quotients):
        x_mat = x_mat + u.data @ q
    return GradedElement(x_mat, c), y
