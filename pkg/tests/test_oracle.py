"""Unit tests for the scalar-path commutative norm."""

import pytest

from nclp import oracle_commutative


def test_flat_counting():
    assert oracle_commutative([1.0, 1.0], 1.0, [1.0, 1.0]) == pytest.approx(2.0)


def test_euclidean_case():
    assert oracle_commutative([3.0, 4.0], 0.5, [1.0, 1.0]) == pytest.approx(5.0)


def test_weighted_sum():
    assert oracle_commutative([2.0, 0.0], 1.0, [1.0, 5.0]) == pytest.approx(2.0)


def test_imaginary_part_of_grading_is_ignored():
    plain = oracle_commutative([1 + 2j, -0.5], 0.75, [1.0, 2.0])
    twisted = oracle_commutative([1 + 2j, -0.5], complex(0.75, -1.4), [1.0, 2.0])
    assert plain == twisted


def test_rejections():
    with pytest.raises(ValueError, match="length mismatch"):
        oracle_commutative([1.0], 1.0, [1.0, 2.0])
    with pytest.raises(ValueError, match="Re a > 0"):
        oracle_commutative([1.0], 0.0, [1.0])
    with pytest.raises(ValueError, match="strictly positive"):
        oracle_commutative([1.0], 1.0, [0.0])


def test_stays_scalar():
    # the oracle must not import numpy, keeping the code path independent
    import importlib

    import nclp.oracle as mod
    importlib.reload(mod)
    assert "numpy" not in mod.__dict__
    assert "np" not in mod.__dict__
