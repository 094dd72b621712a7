"""Weights as density matrices, modular flows, cocycles, pushforwards.

Every weight on a finite-dimensional block algebra is trace against a
positive semidefinite density h: mu(x) = trace(h @ x).  Faithful means
h is positive definite.  The modular automorphism group and the cocycle
derivative then become explicit matrix formulas, h^a p h^-a and h^a k^-a,
with complex powers taken through the positive functional calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AlgebraMismatchError,
    GradingError,
    NonFaithfulError,
    NotPositiveError,
    ValidationError,
)
from .matcore import (
    DEFAULT_TOL,
    BlockAlgebra,
    Element,
    Tolerances,
    ToleranceReport,
    flatten_element,
    operator_norm,
    power_pos,
    spectral_projection,
    trace,
    unflatten_element,
    _pos_eig,
)


@dataclass(frozen=True, eq=False)
class Weight:
    """A weight mu(x) = trace(density @ x); faithful iff density is definite.

    The tolerance decides the support cutoff: a density whose spectrum spans
    more than about 1/rank_rel reports as nonfaithful unless constructed
    with a tighter policy (pass the same policy to the modular operations).
    """

    density: Element
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        _pos_eig(self.density, self.tol)  # raises NotPositiveError

    @property
    def algebra(self) -> BlockAlgebra:
        return self.density.algebra

    @cached_property
    def support(self) -> Element:
        return spectral_projection(self.density, 0.0, self.tol)

    @cached_property
    def faithful(self) -> bool:
        pairs, _ = _pos_eig(self.density, self.tol)
        return all(np.all(w > 0.0) for w, _ in pairs)

    def __call__(self, x: Element) -> complex:
        return evaluate(self, x)

    def power(self, a, tol: Tolerances | None = None) -> Element:
        """Matrix of the grading-a symbol of this weight, density^a."""
        return power_pos(self.density, a, self.tol if tol is None else tol)

    def __repr__(self):
        return f"Weight(dims={self.algebra.block_dims}, faithful={self.faithful})"


def trace_weight(algebra: BlockAlgebra) -> Weight:
    """The reference trace as a weight (identity density)."""
    return Weight(algebra.identity())


def evaluate(mu: Weight, x: Element) -> complex:
    """mu(x) = trace(density @ x); real and >= 0 on positive x."""
    if mu.algebra.block_dims != x.algebra.block_dims:
        raise AlgebraMismatchError(
            f"weight on {mu.algebra.block_dims} applied to element of "
            f"{x.algebra.block_dims}")
    return trace(mu.density @ x)


def _require_imaginary(a, tol: Tolerances):
    a = complex(a)
    if abs(a.real) > tol.eq_abs:
        raise GradingError(f"parameter must be imaginary, got {a}")
    return a


def modular_automorphism(mu: Weight, a, p: Element,
                         tol: Tolerances | None = None) -> Element:
    """Modular flow of a faithful weight: h^a @ p @ h^-a for imaginary a.

    A *-automorphism for every imaginary a; the flow of the trace is the
    identity because the identity density commutes with everything.
    Defaults to the weight's own tolerance policy.
    """
    tol = mu.tol if tol is None else tol
    a = _require_imaginary(a, tol)
    if not mu.faithful:
        raise NonFaithfulError("modular automorphisms require a faithful weight")
    return mu.power(a, tol) @ p @ mu.power(-a, tol)


def connes_cocycle(mu: Weight, nu: Weight, a,
                   tol: Tolerances | None = None) -> Element:
    """Cocycle derivative of mu against faithful nu: h^a @ k^-a, a imaginary.

    mu may be nonfaithful; its kernel rides along through 0^a = 0, making
    the result a partial isometry with left support equal to the support
    of mu's density.  Defaults to the denominator's tolerance policy.
    """
    tol = nu.tol if tol is None else tol
    a = _require_imaginary(a, tol)
    if not nu.faithful:
        raise NonFaithfulError("cocycle derivative requires a faithful denominator")
    return mu.power(a, tol) @ nu.power(-a, tol)


def cocycle_identity_check(mu: Weight, nu: Weight, a, b,
                           tol: Tolerances | None = None) -> ToleranceReport:
    """Residual of (Dmu:Dnu)_{a+b} = (Dmu:Dnu)_a sigma^nu_a((Dmu:Dnu)_b)."""
    tol = nu.tol if tol is None else tol
    a = _require_imaginary(a, tol)
    b = _require_imaginary(b, tol)
    lhs = connes_cocycle(mu, nu, a + b, tol)
    rhs = connes_cocycle(mu, nu, a, tol) @ modular_automorphism(
        nu, a, connes_cocycle(mu, nu, b, tol), tol)
    residual = operator_norm(lhs - rhs)
    bound = tol.eq_bound(max(operator_norm(lhs), 1.0))
    return ToleranceReport(
        max_residual=residual,
        passed=residual <= bound,
        context=f"cocycle identity at a={a}, b={b}")


def change_of_weight(x: Element, a, mu: Weight, nu: Weight,
                     tol: Tolerances | None = None) -> Element:
    """Convert the mu-coordinates of a grading-a element to nu-coordinates.

    The element y * mu^a is rewritten as y' * nu^a, which in densities
    means y' = y @ h^a @ k^-a.  Converting mu -> nu -> rho agrees with
    converting mu -> rho directly.
    """
    tol = mu.tol if tol is None else tol
    a = complex(a)
    if a.real < -tol.eq_abs:
        raise GradingError(f"grading must have Re >= 0, got {a}")
    if not (mu.faithful and nu.faithful):
        raise NonFaithfulError("change of weight requires faithful weights")
    return x @ mu.power(a, tol) @ nu.power(-a, tol)


# -- operator-valued weights ---------------------------------------------


@dataclass(frozen=True)
class BlockEmbedding:
    """A unital *-homomorphism f: M -> N given by block assignment data.

    assignment[j] lists the source blocks whose direct sum fills target
    block j, in order; every source block must be used at least once so
    that f is injective.
    """

    source: BlockAlgebra
    target: BlockAlgebra
    assignment: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(i) for i in row) for row in self.assignment)
        object.__setattr__(self, "assignment", rows)
        if len(rows) != len(self.target.block_dims):
            raise ValueError("assignment must have one row per target block")
        used = set()
        for j, row in enumerate(rows):
            total = 0
            for i in row:
                if not 0 <= i < len(self.source.block_dims):
                    raise ValueError(f"assignment row {j} references block {i}")
                total += self.source.block_dims[i]
                used.add(i)
            if total != self.target.block_dims[j]:
                raise ValueError(
                    f"assignment row {j} fills {total} of "
                    f"{self.target.block_dims[j]} dimensions")
        if used != set(range(len(self.source.block_dims))):
            raise ValueError("every source block must appear in the assignment")

    def apply(self, x: Element) -> Element:
        """f(x): place the assigned source blocks on the target diagonal."""
        if x.algebra.block_dims != self.source.block_dims:
            raise AlgebraMismatchError("element does not live in the source algebra")
        blocks = []
        for j, row in enumerate(self.assignment):
            n = self.target.block_dims[j]
            out = np.zeros((n, n), dtype=complex)
            pos = 0
            for i in row:
                d = self.source.block_dims[i]
                out[pos:pos + d, pos:pos + d] = x.blocks[i]
                pos += d
            blocks.append(out)
        return Element(self.target, tuple(blocks))

    def compose(self, inner: BlockEmbedding) -> BlockEmbedding:
        """self o inner, for inner: L -> M and self: M -> N."""
        if inner.target.block_dims != self.source.block_dims:
            raise AlgebraMismatchError("embeddings do not compose")
        rows = tuple(
            tuple(i for m in row for i in inner.assignment[m])
            for row in self.assignment)
        return BlockEmbedding(inner.source, self.target, rows)


@dataclass(frozen=True, eq=False)
class OperatorValuedWeight:
    """A positive bimodule map T: N -> M over an embedding f: M -> N.

    Stored as an explicit linear map on the flattened coordinates of N;
    constructors guarantee nothing, use validate() before trusting it.
    """

    embedding: BlockEmbedding
    matrix: np.ndarray  # shape (dim M, dim N), acts on flattened elements

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex, copy=True)
        expected = (self.embedding.source.total_dim, self.embedding.target.total_dim)
        if mat.shape != expected:
            raise ValueError(f"matrix must have shape {expected}, got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def source(self) -> BlockAlgebra:
        return self.embedding.target   # N, where arguments live

    @property
    def target(self) -> BlockAlgebra:
        return self.embedding.source   # M, where values land

    def apply(self, q: Element) -> Element:
        if q.algebra.block_dims != self.source.block_dims:
            raise AlgebraMismatchError("argument does not live in the source algebra")
        return unflatten_element(self.target, self.matrix @ flatten_element(q))

    @classmethod
    def from_compression(cls, embedding: BlockEmbedding,
                         slot_weights=None) -> OperatorValuedWeight:
        """Canonical bimodule map: sum the diagonal sub-blocks cut by f.

        With the left-factor embedding of a tensor square this is the
        partial trace; slot_weights rescales each diagonal sub-block and
        must be strictly positive to keep the map faithful.
        """

        def compress(q: Element) -> Element:
            out = [np.zeros((n, n), dtype=complex)
                   for n in embedding.source.block_dims]
            slot = 0
            for j, row in enumerate(embedding.assignment):
                pos = 0
                for i in row:
                    d = embedding.source.block_dims[i]
                    w = 1.0 if slot_weights is None else float(slot_weights[slot])
                    out[i] += w * q.blocks[j][pos:pos + d, pos:pos + d]
                    pos += d
                    slot += 1
            return Element(embedding.source, tuple(out))

        if slot_weights is not None:
            if any(float(w) <= 0.0 for w in slot_weights):
                raise ValueError("slot_weights must be strictly positive")
        cols = [flatten_element(compress(e)) for e in embedding.target.basis()]
        return cls(embedding, np.stack(cols, axis=1))

    def validate(self, tol: Tolerances = DEFAULT_TOL,
                 positivity_samples: int = 8,
                 polarized_samples: int = 8) -> ToleranceReport:
        """Check positivity and the bimodule law; raise ValidationError on failure.

        The bimodule law T(f(p) q f(p)*) = p T(q) p* is checked exhaustively
        over the matrix-unit bases of both algebras, plus seeded random
        polarized triples T(f(p) q f(r)*) = p T(q) r*.  Positivity is checked
        on the identity and on seeded random rank-one positives.
        """
        scale = max(float(np.linalg.norm(self.matrix, 2)), 1.0)
        bound = tol.eq_bound(scale)
        rng = np.random.Generator(np.random.PCG64(0))

        worst = 0.0
        source_basis = list(self.source.basis())
        applied = [self.apply(q) for q in source_basis]
        for q, tq in zip(source_basis, applied):
            r = operator_norm(self.apply(q.adjoint()) - tq.adjoint())
            worst = max(worst, r)
        if worst > bound:
            raise ValidationError(
                f"adjoint law violated: residual {worst:.3e} > {bound:.3e}")

        positives = [self.source.identity()]
        for _ in range(positivity_samples):
            blocks = []
            for n in self.source.block_dims:
                v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                blocks.append(np.outer(v, v.conj()))
            positives.append(Element(self.source, tuple(blocks)))
        for q in positives:
            try:
                _pos_eig(self.apply(q), Tolerances(
                    rank_rel=tol.rank_rel, eq_abs=bound, eq_rel=tol.eq_rel))
            except NotPositiveError as exc:
                raise ValidationError(f"positivity violated: {exc}") from exc

        def check(p, q, tq, r):
            fp = self.embedding.apply(p)
            fr = self.embedding.apply(r)
            resid = operator_norm(
                self.apply(fp @ q @ fr.adjoint()) - p @ tq @ r.adjoint())
            if resid > bound:
                raise ValidationError(
                    f"bimodule law violated: residual {resid:.3e} > {bound:.3e}")
            return resid

        def rand(alg):
            return Element(alg, tuple(
                rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                for n in alg.block_dims))

        for p in self.target.basis():
            for q, tq in zip(source_basis, applied):
                worst = max(worst, check(p, q, tq, p))
        for _ in range(polarized_samples):
            q = rand(self.source)
            worst = max(worst, check(rand(self.target), q, self.apply(q),
                                     rand(self.target)))
        return ToleranceReport(worst, True, "operator-valued weight validation")

    def compose(self, inner: OperatorValuedWeight) -> OperatorValuedWeight:
        """self o inner for stacked maps O -> N -> M."""
        if inner.target.block_dims != self.source.block_dims:
            raise AlgebraMismatchError("operator-valued weights do not compose")
        return OperatorValuedWeight(
            inner.embedding.compose(self.embedding),
            self.matrix @ inner.matrix)


def pushforward_weight(mu: Weight, ovw: OperatorValuedWeight,
                       tol: Tolerances = DEFAULT_TOL) -> Weight:
    """The weight mu o T on the source algebra of T.

    The density is the trace-adjoint of T applied to mu's density, so that
    trace(k @ q) = trace(h @ T(q)) for every q.
    """
    if mu.algebra.block_dims != ovw.target.block_dims:
        raise AlgebraMismatchError("weight does not live on the target algebra")
    ovw.validate(tol)
    k = unflatten_element(ovw.source, ovw.matrix.conj().T @ flatten_element(mu.density))
    k = (k + k.adjoint()) * 0.5
    return Weight(k)
