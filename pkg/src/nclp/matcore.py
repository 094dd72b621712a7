"""Block-diagonal complex matrix algebras with functional calculus.

A finite-dimensional von Neumann algebra is a direct sum of full complex
matrix blocks.  Everything downstream (weights, divisions, graded norms)
is built on the types and operations in this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlgebraMismatchError, NotPositiveError, ShapeError


@dataclass(frozen=True)
class Tolerances:
    """Numerical policy shared by every operation.

    rank_rel
        Relative cutoff for singular values / eigenvalues: anything below
        ``rank_rel * largest * block_dim`` counts as zero (support cutoff).
    eq_abs, eq_rel
        Absolute and relative slack for equality and positivity checks;
        the usual bound for a quantity of size ``s`` is ``eq_abs + eq_rel*s``.
    """

    rank_rel: float = 1e-10
    eq_abs: float = 1e-9
    eq_rel: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.rank_rel < 1.0):
            raise ValueError(f"rank_rel must be in (0, 1), got {self.rank_rel}")
        if self.eq_abs <= 0.0 or self.eq_rel <= 0.0:
            raise ValueError("eq_abs and eq_rel must be strictly positive")

    def eq_bound(self, scale: float) -> float:
        return self.eq_abs + self.eq_rel * float(scale)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class ToleranceReport:
    """Outcome of a tolerance-governed identity check."""

    max_residual: float
    passed: bool
    context: str = ""


@dataclass(frozen=True)
class BlockAlgebra:
    """Direct sum of full matrix blocks, recorded by their dimensions."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if len(dims) == 0:
            raise ValueError("block_dims must be nonempty")
        if any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def total_dim(self) -> int:
        """Complex dimension of the underlying vector space, sum of n_k^2."""
        return sum(n * n for n in self.block_dims)

    @property
    def matrix_dim(self) -> int:
        """Total matrix size, sum of n_k (the algebra acts on C^matrix_dim)."""
        return sum(self.block_dims)

    def identity(self) -> Element:
        return Element(self, tuple(np.eye(n, dtype=complex) for n in self.block_dims))

    def zero(self) -> Element:
        return Element(self, tuple(np.zeros((n, n), dtype=complex) for n in self.block_dims))

    def basis(self):
        """Yield the matrix-unit basis E_ij of every block, in flattening order."""
        for k, n in enumerate(self.block_dims):
            for i in range(n):
                for j in range(n):
                    blocks = [np.zeros((m, m), dtype=complex) for m in self.block_dims]
                    blocks[k][i, j] = 1.0
                    yield Element(self, tuple(blocks))


def _freeze(block: np.ndarray) -> np.ndarray:
    out = np.array(block, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Element:
    """An element of a BlockAlgebra: one complex matrix per block.

    Immutable after construction; all arithmetic returns new elements.
    """

    algebra: BlockAlgebra
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        dims = self.algebra.block_dims
        if len(self.blocks) != len(dims):
            raise ShapeError(
                f"expected {len(dims)} blocks, got {len(self.blocks)}")
        frozen = []
        for k, (block, n) in enumerate(zip(self.blocks, dims)):
            arr = np.asarray(block)
            if arr.shape != (n, n):
                raise ShapeError(
                    f"block {k} must have shape ({n}, {n}), got {arr.shape}")
            frozen.append(_freeze(arr))
        object.__setattr__(self, "blocks", tuple(frozen))

    # -- ring structure -------------------------------------------------

    def _check_compatible(self, other: Element):
        if self.algebra.block_dims != other.algebra.block_dims:
            raise AlgebraMismatchError(
                f"incompatible algebras: {self.algebra.block_dims} vs "
                f"{other.algebra.block_dims}")

    def __add__(self, other: Element) -> Element:
        self._check_compatible(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: Element) -> Element:
        self._check_compatible(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> Element:
        return Element(self.algebra, tuple(-a for a in self.blocks))

    def __matmul__(self, other: Element) -> Element:
        self._check_compatible(other)
        return Element(self.algebra, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar) -> Element:
        c = complex(scalar)
        return Element(self.algebra, tuple(c * a for a in self.blocks))

    __rmul__ = __mul__

    def adjoint(self) -> Element:
        return Element(self.algebra, tuple(a.conj().T for a in self.blocks))

    @property
    def H(self) -> Element:
        return self.adjoint()

    def __repr__(self):
        return f"Element(dims={self.algebra.block_dims})"


def make_element(algebra: BlockAlgebra, blocks) -> Element:
    """Validate a list of matrices against the algebra and wrap it."""
    return Element(algebra, tuple(blocks))


def mul(x: Element, y: Element) -> Element:
    return x @ y


def add(x: Element, y: Element) -> Element:
    return x + y


def scale(c, x: Element) -> Element:
    return x * c


def adjoint(x: Element) -> Element:
    return x.adjoint()


def trace(x: Element) -> complex:
    """Unnormalized blockwise matrix trace, the reference trace everywhere."""
    return complex(sum(np.trace(b) for b in x.blocks))


def operator_norm(x: Element) -> float:
    """Largest singular value over all blocks."""
    return max(float(np.linalg.norm(b, 2)) for b in x.blocks)


def distance(x: Element, y: Element) -> float:
    """operator_norm(x - y), the metric used by all closeness checks."""
    return operator_norm(x - y)


def allclose(x: Element, y: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    scale_ = max(operator_norm(x), operator_norm(y))
    return distance(x, y) <= tol.eq_bound(scale_)


def flatten_element(x: Element) -> np.ndarray:
    """Row-major concatenation of all blocks into a vector of length total_dim."""
    return np.concatenate([b.reshape(-1) for b in x.blocks])


def unflatten_element(algebra: BlockAlgebra, vec: np.ndarray) -> Element:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if vec.size != algebra.total_dim:
        raise ShapeError(f"expected vector of length {algebra.total_dim}, got {vec.size}")
    blocks, pos = [], 0
    for n in algebra.block_dims:
        blocks.append(vec[pos:pos + n * n].reshape(n, n))
        pos += n * n
    return Element(algebra, tuple(blocks))


# -- Hermitian eigensystems and functional calculus ----------------------


def _pos_eig(h: Element, tol: Tolerances):
    """Eigensystems of a positive element, with support clamping.

    Returns (pairs, lmax) where pairs[k] = (w, U) for block k, eigenvalues
    already clamped to 0 below the support cutoff.  Raises NotPositiveError
    if h is not Hermitian PSD within tolerance.
    """
    raw = []
    lmax = 0.0
    for k, a in enumerate(h.blocks):
        asym = float(np.abs(a - a.conj().T).max()) if a.size else 0.0
        scale_ = float(np.abs(a).max()) if a.size else 0.0
        if asym > tol.eq_bound(scale_):
            raise NotPositiveError(
                f"block {k} is not Hermitian: asymmetry {asym:.3e}")
        if not np.any(a - np.diag(np.diagonal(a))) and not np.any(a.imag):
            # exactly diagonal with real entries: trivial eigensystem,
            # which keeps identity densities bit-exact through powers
            w = np.diagonal(a).real.copy()
            u = np.eye(a.shape[0], dtype=complex)
        else:
            w, u = np.linalg.eigh((a + a.conj().T) / 2.0)
        raw.append((w, u))
        if w.size:
            lmax = max(lmax, float(np.abs(w).max()))
    pairs = []
    for k, ((w, u), n) in enumerate(zip(raw, h.algebra.block_dims)):
        if w.size and float(w.min()) < -tol.eq_bound(lmax):
            raise NotPositiveError(
                f"block {k} has negative eigenvalue {w.min():.3e}")
        cutoff = tol.rank_rel * lmax * n
        w = np.where(w > cutoff, w, 0.0)
        pairs.append((w, u))
    return pairs, lmax


def func_calc(h: Element, f, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Apply a scalar function to a positive element through its spectrum.

    Eigenvalues below the support cutoff are passed to ``f`` as exactly 0,
    so the support convention is decided by ``f(0)``.
    """
    pairs, _ = _pos_eig(h, tol)
    blocks = []
    for w, u in pairs:
        fw = np.array([f(float(lam)) for lam in w], dtype=complex)
        blocks.append((u * fw) @ u.conj().T)
    return Element(h.algebra, tuple(blocks))


def power_pos(h: Element, a, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Complex power of a positive element, with 0^a := 0.

    Eigenvalues above the support cutoff map to exp(a*log(lam)) with the
    principal real logarithm; the kernel is carried along as 0.  Negative
    real parts therefore act as pseudo-powers on the support.
    """
    a = complex(a)
    pairs, _ = _pos_eig(h, tol)
    blocks = []
    for w, u in pairs:
        pw = np.zeros(w.shape, dtype=complex)
        mask = w > 0.0
        pw[mask] = np.exp(a * np.log(w[mask]))
        blocks.append((u * pw) @ u.conj().T)
    return Element(h.algebra, tuple(blocks))


def spectral_projection(h: Element, c: float, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Projection onto the part of the spectrum in [c, inf).

    For c = 0 this is the support projection (the kernel never counts).
    """
    c = float(c)
    if c < 0.0:
        raise ValueError(f"threshold must be nonnegative, got {c}")
    pairs, _ = _pos_eig(h, tol)
    blocks = []
    for w, u in pairs:
        # the kernel never counts, so c = 0 gives the support projection
        mask = (w >= c) & (w > 0.0)
        usel = u[:, mask]
        blocks.append(usel @ usel.conj().T)
    return Element(h.algebra, tuple(blocks))
