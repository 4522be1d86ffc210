import math

import pytest

from sta_otto import coth, csch

from conftest import COTH_008, COTH_0025


def test_coth_frozen_values():
    assert coth(0.08) == pytest.approx(COTH_008, rel=1e-15)
    assert coth(0.025) == pytest.approx(COTH_0025, rel=1e-15)


def test_coth_series_branch_matches_laurent():
    x = 1e-6
    assert coth(x) == pytest.approx(1.0 / x + x / 3.0, rel=1e-15)


def test_branch_consistency_at_cutoff():
    # just above the series cutoff both branches are valid; they must agree
    x = 1.01e-4
    series = 1.0 / x + x / 3.0 - x**3 / 45.0
    assert coth(x) == pytest.approx(series, rel=1e-12)
    series = 1.0 / x - x / 6.0 + 7.0 * x**3 / 360.0
    assert csch(x) == pytest.approx(series, rel=1e-12)


@pytest.mark.parametrize("x", [1e-3, 0.08, 1.0, 5.0, 30.0])
def test_coth_csch_identity(x):
    # coth^2 - csch^2 = 1; the difference of two ~1/x^2 numbers puts an
    # eps/x^2 floor on the achievable accuracy, so scale the tolerance
    tol = 1e-13 + 5e-15 * coth(x) ** 2
    assert coth(x) ** 2 - csch(x) ** 2 == pytest.approx(1.0, abs=tol)


def test_no_overflow_for_cold_states():
    assert coth(400.0) == 1.0
    assert csch(400.0) == pytest.approx(2.0 * math.exp(-400.0), rel=1e-13)
    assert csch(800.0) == 0.0  # graceful underflow


@pytest.mark.parametrize("x", [1e-6, 0.08, 7.0])
def test_odd_symmetry(x):
    assert coth(-x) == -coth(x)
    assert csch(-x) == -csch(x)


def test_zero_argument_raises():
    with pytest.raises(ZeroDivisionError):
        coth(0.0)
    with pytest.raises(ZeroDivisionError):
        csch(0.0)
