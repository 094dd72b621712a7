"""Seeded random generators for elements, weights, and gradings.

All randomness flows through numpy's PCG64 bit generator, so a seed pins
the entire stream across platforms.  Conventions: generic elements are
entrywise standard complex Gaussian, positives are g @ g*, and faithful
weight densities are g @ g* plus a small multiple of the identity.
"""

from __future__ import annotations

import numpy as np

from .graded import GradedElement
from .matcore import BlockAlgebra, Element
from .weights import Weight

FAITHFUL_FLOOR = 1e-2


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rng(seed, key: str) -> np.random.Generator:
    """Independent deterministic stream for a named suite property."""
    digest = np.frombuffer(key.encode(), dtype=np.uint8)
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([int(seed), *digest.tolist()])))


def random_element(rng: np.random.Generator, algebra: BlockAlgebra) -> Element:
    blocks = []
    for n in algebra.block_dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(g / np.sqrt(2.0))
    return Element(algebra, tuple(blocks))


def random_positive(rng: np.random.Generator, algebra: BlockAlgebra) -> Element:
    g = random_element(rng, algebra)
    return g @ g.adjoint()


def random_projection(rng: np.random.Generator, algebra: BlockAlgebra,
                      full_rank_ok: bool = True) -> Element:
    """Projection with a random rank per block (possibly 0 or full)."""
    blocks = []
    for n in algebra.block_dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        _, u = np.linalg.eigh(g + g.conj().T)
        hi = n if full_rank_ok else n - 1
        r = int(rng.integers(0, hi + 1))
        blocks.append(u[:, :r] @ u[:, :r].conj().T)
    return Element(algebra, tuple(blocks))


def random_weight(rng: np.random.Generator, algebra: BlockAlgebra,
                  faithful: bool = True, floor: float = FAITHFUL_FLOOR) -> Weight:
    h = random_positive(rng, algebra)
    if faithful:
        h = h + floor * algebra.identity()
    else:
        p = random_projection(rng, algebra)
        h = p @ h @ p
    return Weight(h)


def random_graded(rng: np.random.Generator, algebra: BlockAlgebra,
                  grading) -> GradedElement:
    return GradedElement(random_element(rng, algebra), complex(grading))


def random_grading(rng: np.random.Generator, re_choices=(0.0, 1 / 3, 0.5, 1.0, 1.5),
                   im_span: float = 2.0) -> complex:
    re = float(rng.choice(np.asarray(re_choices, dtype=float)))
    return complex(re, float(rng.uniform(-im_span, im_span)))


def random_shape(rng: np.random.Generator, shapes) -> BlockAlgebra:
    return BlockAlgebra(tuple(shapes[int(rng.integers(0, len(shapes)))]))
