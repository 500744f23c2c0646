from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtmoments.exactnum import ExactReal
from rmtmoments.symplectic import gse_moment, jse_moment, lse_moment, s_gauss, s_jacobi, s_laguerre

halves = st.integers(0, 6).map(lambda t: F(t, 2))
sizes = st.integers(2, 8).map(lambda t: F(t, 2))


def test_empty_corrections():
    for n in (1, F(3, 2), 3):
        for k in (0, 1):
            assert s_jacobi(k, n, 1, F(1, 2)).value == ExactReal(0)
            assert s_laguerre(k, n, F(3, 2)).value == ExactReal(0)
            assert s_laguerre(k, n, F(3, 2)).i_j_terms == 0
        assert s_gauss(0, n).value == ExactReal(0)


def test_one_eigenvalue_cases():
    # n = 1: the jpdf is the bare weight, so moments are one-dimensional Beta/Gamma ratios
    for b in (0, 1, F(3, 2)):
        assert lse_moment(1, 1, b).exact == ExactReal(b + 1)  # int x * x^(2b+1) e^(-2x)
    assert lse_moment(-1, 1, 2).exact == ExactReal(F(2, 5))  # 2 / (2b + 1)
    assert gse_moment(2, 1).exact == ExactReal(F(1, 4))  # weight exp(-2 x^2)
    assert jse_moment(2, 1, 0, 0).exact == ExactReal(F(3, 10))  # B(4, 2) / B(2, 2)
    assert s_gauss(2, 1).i_j_terms == 1


def test_zero_order():
    assert lse_moment(0, 3, 1).exact == ExactReal(3)
    assert jse_moment(0, F(5, 2), 1, 0).exact == ExactReal(F(5, 2))
    assert gse_moment(0, 2).exact == ExactReal(2)


def test_half_integer_size():
    v = jse_moment(3, F(3, 2), 0, 0)
    assert v.convergent and v.exact == ExactReal(F(87, 224))
    assert s_jacobi(3, F(3, 2), 0, 0).value == ExactReal(F(81, 1120))


def test_divergence():
    # public LSE weight x^(2b+1): diverges for k <= -(2b+2)
    assert not lse_moment(-2, 1, 0).convergent
    assert lse_moment(-1, 1, 0).convergent
    assert lse_moment(-3, 1, 5).exact == ExactReal(F(4, 495))  # 2^3 Gamma(9) / Gamma(12)


def test_odd_gaussian_moments_vanish():
    for n in range(1, 5):
        for k in (1, 3, 5):
            assert gse_moment(k, n).exact == ExactReal(0)


@settings(max_examples=60, deadline=None)
@given(halves, halves, sizes, st.integers(1, 5))
def test_assembled_values_rational(a, b, n, k):
    for r in (jse_moment(k, n, a, b), lse_moment(k, n, b)):
        assert r.exact.pi_half_exp == 0
        assert r.exact.rational > 0
    if n.denominator == 1:
        assert gse_moment(2 * k, n).exact.pi_half_exp == 0


@settings(max_examples=40, deadline=None)
@given(halves, halves, sizes, st.integers(1, 5))
def test_jse_moments_decrease(a, b, n, k):
    assert jse_moment(k + 1, n, a, b).exact.rational < jse_moment(k, n, a, b).exact.rational <= n


@pytest.mark.parametrize("k", [2, 4])
def test_symplectic_correction_bounds(k):
    # j runs to min(floor n, floor k/2), i to min(2n - 2j, k - 2j)
    n = F(5, 2)
    expected = sum(min(int(2 * n) - 2 * j, k - 2 * j) + 1 for j in range(1, min(2, k // 2) + 1))
    assert s_jacobi(k, n, 1, 1).i_j_terms <= expected
