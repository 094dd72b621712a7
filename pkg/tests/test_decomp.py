"""Unit tests for supports, polar decompositions, and division."""

import numpy as np
import pytest

from nclp import (
    BlockAlgebra,
    ConditionViolatedError,
    GradedElement,
    GradingError,
    NonFaithfulError,
    UnsolvableError,
    cyclic_generator,
    distance,
    douglas_divide,
    douglas_ladder,
    graded_divide,
    isometry_divide,
    left_support,
    make_element,
    operator_norm,
    polar_left,
    polar_right,
    power_pos,
    rank1_reduce,
    right_support,
    trace_weight,
)
from nclp.sampling import (
    make_rng,
    random_element,
    random_graded,
    random_positive,
    random_projection,
    random_weight,
)

M2 = BlockAlgebra((2,))


def e(i, j):
    m = np.zeros((2, 2), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return make_element(M2, [m])


def diag(*vals):
    return make_element(M2, [np.diag(np.asarray(vals, dtype=complex))])


def test_support_examples():
    assert distance(right_support(M2.identity()), M2.identity()) == 0.0
    assert distance(right_support(e(1, 2)), e(2, 2)) < 1e-14
    assert distance(left_support(e(1, 2)), e(1, 1)) < 1e-14
    assert operator_norm(right_support(M2.zero())) == 0.0


def test_left_support_is_right_support_of_adjoint():
    rng = make_rng(0)
    x = random_element(rng, BlockAlgebra((3, 2))) @ random_projection(
        rng, BlockAlgebra((3, 2)))
    assert distance(left_support(x), right_support(x.adjoint())) < 1e-12


def test_polar_matrix_unit():
    pol = polar_right(e(1, 2))
    assert distance(pol.isometry, e(1, 2)) < 1e-14
    assert distance(pol.positive, e(2, 2)) < 1e-14


def test_polar_positive_and_unitary_cases():
    rng = make_rng(1)
    h = random_positive(rng, M2)
    pol = polar_right(h)
    assert distance(pol.positive, h) < 1e-12
    assert distance(pol.isometry, right_support(h)) < 1e-12
    u = polar_right(random_element(rng, M2)).isometry  # generically unitary
    pu = polar_right(u)
    assert distance(pu.isometry, u) < 1e-12
    assert distance(pu.positive, M2.identity()) < 1e-12


def test_polar_laws_random():
    rng = make_rng(2)
    M = BlockAlgebra((3, 1))
    x = random_element(rng, M) @ random_projection(rng, M)
    r, l = polar_right(x), polar_left(x)
    u, z = r.isometry, r.positive
    assert distance(u @ z, x) < 1e-12
    assert distance(l.positive @ l.isometry, x) < 1e-12
    assert distance(l.isometry, u) < 1e-12
    assert distance(u.adjoint() @ u, right_support(x)) < 1e-12
    assert distance(u @ u.adjoint(), left_support(x)) < 1e-12


def test_douglas_scalar_division_on_support():
    result = douglas_divide(diag(1, 0), diag(2, 0))
    assert distance(result.quotient, diag(2, 0)) < 1e-13
    assert abs(result.minimal_c - 2.0) < 1e-13


def test_douglas_disjoint_supports_unsolvable():
    with pytest.raises(UnsolvableError) as err:
        douglas_divide(diag(0, 1), diag(1, 0))
    assert err.value.residual == pytest.approx(1.0)


def test_douglas_unitary_case():
    rng = make_rng(3)
    u = polar_right(random_element(rng, M2)).isometry
    y = random_element(rng, M2)
    result = douglas_divide(u, y)
    assert distance(result.quotient, y @ u.adjoint()) < 1e-12
    assert abs(result.minimal_c - operator_norm(y)) < 1e-12


def test_douglas_uniqueness_canonicalization():
    rng = make_rng(4)
    M = BlockAlgebra((3,))
    p_proj = random_projection(rng, M)
    x = random_element(rng, M) @ p_proj
    y = random_element(rng, M) @ x
    p = douglas_divide(x, y).quotient
    w = random_element(rng, M)
    other = p + w @ (M.identity() - left_support(x))
    assert distance(other @ x, y) < 1e-11
    assert distance(other @ left_support(x), p) < 1e-11


def test_douglas_supports():
    rng = make_rng(5)
    M = BlockAlgebra((3,))
    x = random_element(rng, M) @ random_projection(rng, M)
    y = random_element(rng, M) @ x
    p = douglas_divide(x, y).quotient
    assert distance(p @ left_support(x), p) < 1e-12
    assert distance(left_support(p), left_support(y)) < 1e-11


def test_douglas_ladder_monotone_convergence():
    rng = make_rng(6)
    M = BlockAlgebra((3,))
    x = random_element(rng, M)
    y = random_element(rng, M) @ x
    ladder = douglas_ladder(x, y)
    gaps = [g for _, g in ladder]
    assert all(gaps[k + 1] <= gaps[k] + 1e-12 for k in range(len(gaps) - 1))
    assert gaps[-1] < 1e-10


def test_isometry_divide_examples():
    rng = make_rng(7)
    x = random_element(rng, M2)
    p = isometry_divide(x, x)
    assert distance(p, left_support(x)) < 1e-12
    q = isometry_divide(make_element(M2, [np.diag([1.0, 0.0])]), e(2, 1))
    assert distance(q, e(2, 1)) < 1e-13


def test_isometry_divide_recovers_polar_isometry():
    rng = make_rng(8)
    M = BlockAlgebra((3,))
    x = random_element(rng, M)
    pol = polar_right(x)
    assert distance(isometry_divide(pol.positive, x), pol.isometry) < 1e-11


def test_isometry_divide_rejects_mismatched_grams():
    rng = make_rng(9)
    x = random_element(rng, M2)
    with pytest.raises(ConditionViolatedError):
        isometry_divide(x, 2.0 * x)


def test_cyclic_generator_single_real_grading():
    rng = make_rng(10)
    u = random_graded(rng, M2, 0.5)
    y, qs, cert = cyclic_generator([u], trace_weight(M2))
    absval = power_pos(u.data.adjoint() @ u.data, 0.5)
    assert distance(y.data, absval) < 1e-12
    assert distance(qs[0], polar_right(u.data).isometry) < 1e-11
    assert distance(cert[0] @ u.data, y.data) < 1e-11


def test_cyclic_generator_matrix_units():
    u1 = GradedElement(e(1, 1), 0.0)
    u2 = GradedElement(e(1, 2), 0.0)
    y, qs, cert = cyclic_generator([u1, u2], trace_weight(M2))
    assert distance(y.data, M2.identity()) < 1e-12
    assert distance(qs[0], e(1, 1)) < 1e-12
    assert distance(qs[1], e(1, 2)) < 1e-12
    rebuilt = cert[0] @ u1.data + cert[1] @ u2.data
    assert distance(rebuilt, M2.identity()) < 1e-11


def test_cyclic_generator_proportional_pair():
    rng = make_rng(11)
    u = random_graded(rng, M2, 1.0)
    y, qs, _ = cyclic_generator([u, 2.0 * u], trace_weight(M2))
    expected = power_pos(5.0 * (u.data.adjoint() @ u.data), 0.5)
    assert distance(y.data, expected) < 1e-11
    assert distance(qs[0] @ y.data, u.data) < 1e-11
    assert distance(qs[1] @ y.data, 2.0 * u.data) < 1e-11


def test_cyclic_generator_errors():
    rng = make_rng(12)
    with pytest.raises(ValueError):
        cyclic_generator([], trace_weight(M2))
    mixed = [random_graded(rng, M2, 0.5), random_graded(rng, M2, 1.0)]
    with pytest.raises(GradingError):
        cyclic_generator(mixed, trace_weight(M2))
    from nclp import Weight
    nonfaithful = Weight(diag(1, 0))
    with pytest.raises(NonFaithfulError):
        cyclic_generator([random_graded(rng, M2, 0.5)], nonfaithful)


def test_cyclic_generator_weight_independence_of_submodule_facts():
    rng = make_rng(13)
    M = BlockAlgebra((2, 2))
    gens = [random_graded(rng, M, 0.5 + 0.9j) for _ in range(3)]
    for mu in (random_weight(rng, M), random_weight(rng, M)):
        y, qs, cert = cyclic_generator(gens, mu)
        for g, q in zip(gens, qs):
            assert distance(q @ y.data, g.data) < 1e-10
        rebuilt = M.zero()
        for c, g in zip(cert, gens):
            rebuilt = rebuilt + c @ g.data
        assert distance(rebuilt, y.data) < 1e-10


def test_rank1_matrix_units():
    pairs = [(GradedElement(e(1, 1), 0.0), GradedElement(e(1, 1), 0.0)),
             (GradedElement(e(1, 2), 0.0), GradedElement(e(2, 1), 0.0))]
    x, y = rank1_reduce(pairs, trace_weight(M2))
    assert distance(x.data @ y.data, 2.0 * e(1, 1)) < 1e-12


def test_rank1_zero_right_factors():
    rng = make_rng(14)
    pairs = [(random_graded(rng, M2, 1.0), GradedElement(M2.zero(), 0.5))
             for _ in range(2)]
    x, y = rank1_reduce(pairs, trace_weight(M2))
    assert operator_norm(y.data) == 0.0
    assert operator_norm(x.data @ y.data) == 0.0


def test_graded_divide_grading_bookkeeping():
    rng = make_rng(15)
    x = random_graded(rng, M2, 0.5 + 0.3j)
    q = random_element(rng, M2)
    y = GradedElement(q @ x.data, 0.5 - 0.9j)
    out = graded_divide(x, y)
    assert out.grading == y.grading - x.grading
    assert distance(out.data @ x.data, y.data) < 1e-11


def test_graded_divide_rejects_real_part_mismatch():
    rng = make_rng(16)
    x = random_graded(rng, M2, 0.5)
    y = random_graded(rng, M2, 1.0)
    with pytest.raises(GradingError):
        graded_divide(x, y)
    zero = graded_divide(x, GradedElement(M2.zero(), 1.0))
    assert operator_norm(zero.data) == 0.0
    assert zero.grading.real >= 0.0
