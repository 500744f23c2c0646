from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtmoments.exactnum import ExactReal
from rmtmoments.unitary import gue_moment, jue_moment, jue_moment_diff, lue_moment

# density-quadrature oracle values (Christoffel-Darboux density), computed first and frozen
ORACLE_JUE_DIFF_N2_A1_B2_K1 = 0.35714285714285765
ORACLE_JUE_N3_A0_B1_K3 = 1.0666666666666578
ORACLE_LUE_N3_B1_K_HALF = 5.3796743834124605
ORACLE_LUE_N2_BHALF_K_MHALF = 2.0686951396751114


def test_lue_examples():
    for n in (1, 4):
        assert lue_moment(0, n, F(3, 2)).exact == ExactReal(n)
    assert lue_moment(1, 2, 0).exact == ExactReal(4)
    assert lue_moment(-1, 1, 2).exact == ExactReal(F(1, 2))


def test_lue_divergence():
    r = lue_moment(-3, 2, 0)
    assert not r.convergent and r.value is None
    assert not lue_moment(F(-3, 2), 2, F(1, 2)).convergent
    # the density behaves like x**b at the origin
    assert not lue_moment(-2, 2, 1).convergent
    assert lue_moment(-2, 2, 2).convergent


def test_lue_real_order_matches_quadrature():
    v = lue_moment(F(1, 2), 3, 1).value
    assert float(v.value) == pytest.approx(ORACLE_LUE_N3_B1_K_HALF, rel=1e-10)
    v = lue_moment(F(-1, 2), 2, F(1, 2)).value
    assert float(v.value) == pytest.approx(ORACLE_LUE_N2_BHALF_K_MHALF, rel=1e-10)


@pytest.mark.parametrize("n", range(1, 21))
def test_lue_first_moment(n):
    for b in (0, 1, F(5, 2)):
        assert lue_moment(1, n, b).exact == ExactReal(n * (n + b))


def test_jue_examples():
    assert jue_moment_diff(1, 1, 0, 0) == ExactReal(F(1, 6))
    assert float(jue_moment_diff(1, 2, 1, 2)) == pytest.approx(ORACLE_JUE_DIFF_N2_A1_B2_K1, rel=1e-10)
    assert jue_moment(1, 2, 1, 2).exact == ExactReal(F(8, 7))
    assert jue_moment(0, 3, 1, 2).exact == ExactReal(3)
    assert float(jue_moment(3, 3, 0, 1).exact) == pytest.approx(ORACLE_JUE_N3_A0_B1_K3, rel=1e-10)


def test_jue_telescoping():
    for a in (0, 1, 2):
        for b in (0, 1, 2):
            for n in range(1, 6):
                for k in range(1, 7):
                    d = jue_moment(k, n, a, b).exact - jue_moment(k + 1, n, a, b).exact
                    assert d == jue_moment_diff(k, n, a, b)
                    assert d.rational > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6).map(lambda t: F(t, 2)), st.integers(0, 6).map(lambda t: F(t, 2)),
       st.integers(1, 6), st.integers(1, 6))
def test_jue_positive_decreasing_exact(a, b, n, k):
    m = jue_moment(k, n, a, b).exact
    assert m.pi_half_exp == 0
    assert 0 < m.rational <= n
    assert jue_moment(k + 1, n, a, b).exact.rational < m.rational


def test_gue_examples():
    assert gue_moment(0, 3).exact == ExactReal(3)
    assert gue_moment(2, 1).exact == ExactReal(F(1, 2))
    for n in range(1, 6):
        for k in (1, 3, 5):
            assert gue_moment(k, n).exact == ExactReal(0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6), st.integers(0, 6).map(lambda t: F(t, 2)))
def test_positive_even_moments(n, k, b):
    g = gue_moment(2 * k, n).exact
    assert g.pi_half_exp == 0 and g.rational > 0
    m = lue_moment(k, n, b).exact
    assert m.pi_half_exp == 0 and m.rational > 0
