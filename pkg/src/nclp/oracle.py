"""Scalar-arithmetic norm on diagonal algebras, kept free of matrix code.

This is the independent cross-check for the matrix-path graded norm: on an
algebra of 1x1 blocks the two must agree, and the whole point is that this
file never touches numpy, SVDs, or eigendecompositions.
"""

from __future__ import annotations


def oracle_commutative(f, a, mu_diag) -> float:
    """Weighted commutative norm (sum_k mu_k |f_k|^(1/Re a))^(Re a).

    f is a sequence of complex samples, mu_diag the strictly positive
    diagonal of the weight; requires Re a > 0.
    """
    a = complex(a)
    if a.real <= 0.0:
        raise ValueError(f"the scalar oracle needs Re a > 0, got {a}")
    f = list(f)
    mu = [float(m) for m in mu_diag]
    if len(f) != len(mu):
        raise ValueError(f"length mismatch: {len(f)} samples vs {len(mu)} weights")
    if any(m <= 0.0 for m in mu):
        raise ValueError("weights must be strictly positive")
    p = 1.0 / a.real
    total = 0.0
    for fk, mk in zip(f, mu):
        total += mk * abs(complex(fk)) ** p
    return total ** a.real
