"""Unit tests for the block-matrix substrate."""

import numpy as np
import pytest

from nclp import (
    AlgebraMismatchError,
    BlockAlgebra,
    NotPositiveError,
    ShapeError,
    Tolerances,
    adjoint,
    allclose,
    distance,
    flatten_element,
    func_calc,
    make_element,
    mul,
    operator_norm,
    power_pos,
    spectral_projection,
    trace,
    unflatten_element,
)
from nclp.sampling import make_rng, random_element, random_positive

M2 = BlockAlgebra((2,))
DIAG2 = BlockAlgebra((1, 1))


def e(i, j):
    m = np.zeros((2, 2), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return make_element(M2, [m])


def test_make_element_identity():
    x = make_element(M2, [np.eye(2)])
    assert distance(x, M2.identity()) == 0.0


def test_make_element_scalar_blocks():
    x = make_element(DIAG2, [np.array([[2.0]]), np.array([[3.0]])])
    assert trace(x) == 5.0


def test_make_element_shape_mismatch_names_block():
    with pytest.raises(ShapeError, match="block 0"):
        make_element(M2, [np.zeros((3, 3))])
    with pytest.raises(ShapeError, match="block 1"):
        make_element(DIAG2, [np.zeros((1, 1)), np.zeros((2, 2))])


def test_arithmetic_rejects_incompatible_algebras():
    rng = make_rng(6)
    x = random_element(rng, M2)
    y = random_element(rng, DIAG2)
    with pytest.raises(AlgebraMismatchError):
        x @ y
    with pytest.raises(AlgebraMismatchError):
        x + y


def test_unit_law_and_involution():
    rng = make_rng(0)
    x = random_element(rng, M2)
    assert distance(mul(M2.identity(), x), x) == 0.0
    assert distance(adjoint(adjoint(x)), x) == 0.0


def test_matrix_units_multiply():
    assert distance(e(1, 2) @ e(2, 1), e(1, 1)) == 0.0


def test_trace_examples():
    assert trace(M2.identity()) == 2.0
    assert trace(e(1, 2)) == 0.0
    d = make_element(M2, [np.diag([3.0, 4.0])])
    assert trace(d @ d.adjoint()) == 25.0


def test_trace_is_cyclic():
    rng = make_rng(1)
    x, y = random_element(rng, M2), random_element(rng, M2)
    assert abs(trace(x @ y) - trace(y @ x)) < 1e-12


def test_power_pos_scalar_sqrt():
    h = make_element(BlockAlgebra((1,)), [np.array([[4.0]])])
    assert distance(power_pos(h, 0.5), make_element(h.algebra, [np.array([[2.0]])])) < 1e-14


def test_power_pos_zero_is_zero():
    z = M2.zero()
    for a in (0.5, 1.0, 1j, 0.0, 2 - 0.3j):
        assert operator_norm(power_pos(z, a)) == 0.0


def test_power_pos_complex_exponent():
    h = make_element(M2, [np.diag([1.0, 4.0])])
    expected = make_element(M2, [np.diag([1.0, np.exp(1j * np.log(4.0))])])
    assert distance(power_pos(h, 1j), expected) < 1e-14


def test_power_pos_negative_power_on_support():
    h = make_element(M2, [np.diag([4.0, 0.0])])
    assert distance(power_pos(h, -1.0), make_element(M2, [np.diag([0.25, 0.0])])) < 1e-14


def test_power_pos_rejects_nonpositive():
    with pytest.raises(NotPositiveError, match="negative eigenvalue"):
        power_pos(make_element(M2, [np.diag([1.0, -1.0])]), 0.5)
    with pytest.raises(NotPositiveError, match="not Hermitian"):
        power_pos(e(1, 2), 0.5)


def test_power_addition_and_adjoint():
    rng = make_rng(2)
    h = random_positive(rng, BlockAlgebra((3, 2)))
    for a, b in [(0.5, 0.5), (1.5 + 0.7j, 0.25 - 1.1j), (1j, -1j)]:
        lhs = power_pos(h, a) @ power_pos(h, b)
        assert distance(lhs, power_pos(h, a + b)) < 1e-11
        assert distance(power_pos(h, a).adjoint(),
                        power_pos(h, np.conj(a))) < 1e-12


def test_power_pos_imaginary_is_unitary_on_support():
    rng = make_rng(7)
    h = random_positive(rng, M2)
    p = make_element(M2, [np.diag([1.0, 0.0])])
    hp = p @ h @ p  # rank-deficient positive
    u = power_pos(hp, -1.3j)
    assert distance(u @ u.adjoint(), spectral_projection(hp, 0.0)) < 1e-12


def test_func_calc_identity_and_clip():
    h = make_element(M2, [np.diag([0.5, 2.0])])
    assert distance(func_calc(h, lambda t: t), h) < 1e-14
    clipped = func_calc(h, lambda t: 1.0 / t if t >= 1.0 else 0.0)
    assert distance(clipped, make_element(M2, [np.diag([0.0, 0.5])])) < 1e-14


def test_func_calc_agrees_with_power_map():
    rng = make_rng(8)
    h = random_positive(rng, BlockAlgebra((3,)))
    for a in (0.5, 2.0):
        assert distance(func_calc(h, lambda t: t ** a), power_pos(h, a)) < 1e-11


def test_func_calc_support_vs_identity():
    h = make_element(M2, [np.diag([3.0, 0.0])])
    assert distance(func_calc(h, lambda t: 1.0), M2.identity()) < 1e-14
    support = func_calc(h, lambda t: 1.0 if t > 0 else 0.0)
    assert distance(support, make_element(M2, [np.diag([1.0, 0.0])])) < 1e-14


def test_spectral_projection_examples():
    h = make_element(M2, [np.diag([1.0, 3.0])])
    assert distance(spectral_projection(h, 2.0),
                    make_element(M2, [np.diag([0.0, 1.0])])) < 1e-14
    hp = make_element(M2, [np.diag([2.0, 0.0])])
    assert distance(spectral_projection(hp, 0.0),
                    make_element(M2, [np.diag([1.0, 0.0])])) < 1e-14
    assert operator_norm(spectral_projection(h, 10.0)) == 0.0


def test_spectral_projection_commutes_and_dominates():
    rng = make_rng(3)
    h = random_positive(rng, BlockAlgebra((4,)))
    c = 0.5 * operator_norm(h)
    p = spectral_projection(h, c)
    assert distance(p @ h, h @ p) < 1e-12
    low = p @ h @ p - c * p
    assert min(np.linalg.eigvalsh(low.blocks[0]).min(), 0.0) > -1e-12


def test_operator_norm_examples():
    assert operator_norm(M2.identity()) == 1.0
    assert operator_norm(make_element(M2, [np.diag([3.0, -4.0])])) == 4.0
    assert abs(operator_norm(e(1, 2) + e(2, 1)) - 1.0) < 1e-14


def test_elements_are_immutable():
    x = M2.identity()
    with pytest.raises(ValueError):
        x.blocks[0][0, 0] = 5.0


def test_tolerances_validation():
    with pytest.raises(ValueError):
        Tolerances(rank_rel=2.0)
    with pytest.raises(ValueError):
        Tolerances(eq_abs=0.0)


def test_flatten_roundtrip():
    rng = make_rng(4)
    M = BlockAlgebra((2, 3, 1))
    x = random_element(rng, M)
    assert distance(unflatten_element(M, flatten_element(x)), x) == 0.0


def test_allclose_scales():
    rng = make_rng(5)
    x = random_element(rng, M2)
    assert allclose(x, x + 1e-12 * M2.identity())
    assert not allclose(x, x + M2.identity())
