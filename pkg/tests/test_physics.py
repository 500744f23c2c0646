from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtmoments.errors import OddDimension
from rmtmoments.exactnum import ExactReal
from rmtmoments.physics import (
    DelayQuery,
    TransportQuery,
    charge_cumulants,
    delay_limit,
    delay_moment,
    jacobi_parameters,
    kappa2_closed,
    kappa3_over_kappa2_closed,
    limit_catalan,
    schroeder_series,
    transmission_moment,
    transmission_moment_display,
)

# literal jpdf integration (gap-coordinate cubature), frozen
ORACLE_T1_BETA1_M2_N2 = 0.80000000000571159
ORACLE_D2_BETA2_N2 = 1.3333333333333313  # <tr Q^-2 ...> = M_L(-2, 2), b = 2


def test_transmission_examples():
    for m, n in [(1, 1), (3, 2), (7, 4)]:
        assert transmission_moment(TransportQuery(2, n, m, 1)).exact == ExactReal(F(n * m, n + m))
    assert transmission_moment(TransportQuery(2, 1, 1, 2)).exact == ExactReal(F(1, 3))
    assert jacobi_parameters(1, 0, 2, 2) == (1, 0)
    v = transmission_moment(TransportQuery(1, 2, 2, 1)).exact
    assert float(v) == pytest.approx(ORACLE_T1_BETA1_M2_N2, rel=1e-8)


def test_query_validation():
    with pytest.raises(ValueError):
        TransportQuery(2, 3, 2)
    with pytest.raises(ValueError):
        TransportQuery(3, 1, 1)
    with pytest.raises(OddDimension):
        TransportQuery(1, 3, 3)
    with pytest.raises(OddDimension):
        DelayQuery(1, 3, 1)


@pytest.mark.parametrize("n", range(1, 11))
def test_mean_delay_is_one(n):
    assert delay_moment(DelayQuery(2, n, 1)).exact == ExactReal(1)


def test_delay_examples():
    assert float(delay_moment(DelayQuery(2, 2, 2)).exact) == pytest.approx(2 * ORACLE_D2_BETA2_N2, rel=1e-8)
    for beta, n in [(2, 1), (2, 3), (4, 2), (1, 2)]:
        kmax = F(n * beta, 2) + 1
        r = delay_moment(DelayQuery(beta, n, int(kmax) if kmax.denominator == 1 else int(kmax) + 1))
        assert not r.convergent
    assert delay_moment(DelayQuery(2, 3, 3)).convergent


def test_cumulant_examples():
    q = TransportQuery(2, 1, 1)
    c = charge_cumulants(q, 3)
    assert c[2] == ExactReal(F(1, 6))
    assert c[1] == transmission_moment(q).exact
    assert c[3] == ExactReal(0)


@pytest.mark.parametrize("beta", [1, 2, 4])
@pytest.mark.parametrize("delta", [0, 2, F(1, 2)])
@pytest.mark.parametrize("mn", [(1, 1), (2, 2), (4, 2), (5, 3)])
def test_cumulants_match_closed_forms(beta, delta, mn):
    m, n = mn
    if beta == 1 and n % 2:
        return
    c = charge_cumulants(TransportQuery(beta, n, m, 1, delta), 3)
    assert c[2] == kappa2_closed(beta, delta, m, n)
    assert c[3] / c[2] == kappa3_over_kappa2_closed(beta, delta, m, n)


def test_display_forms_agree_with_engine():
    for beta in (1, 2, 4):
        for delta in (0, 1, 2):
            for m, n in [(2, 2), (4, 2), (5, 4)]:
                for k in range(1, 4):
                    q = TransportQuery(beta, n, m, k, delta)
                    assert transmission_moment(q).exact == transmission_moment_display(q)


def test_limits():
    assert limit_catalan(1) == ExactReal(F(1, 2))
    assert schroeder_series(1) == ExactReal(2)
    assert schroeder_series(2) == ExactReal(6)
    assert [delay_limit(k).rational for k in range(1, 6)] == [1, 2, 6, 22, 90]


@pytest.mark.parametrize("beta", [1, 4])
def test_catalan_residual_halves(beta):
    # leading finite-n correction is O(1/n) away from beta = 2
    for k in range(1, 6):
        res = [float(transmission_moment(TransportQuery(beta, n, n, k)).exact) / n - float(limit_catalan(k))
               for n in (20, 40, 80)]
        for r0, r1 in zip(res, res[1:]):
            assert r0 / r1 == pytest.approx(2, abs=0.05)


def test_catalan_residual_beta2_is_second_order():
    res = [float(transmission_moment(TransportQuery(2, n, 2 * n, 3)).exact) / n - float(limit_catalan(3, 2))
           for n in (20, 40, 80)]
    assert res[0] / res[1] == pytest.approx(4, abs=0.05)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 2, 4]), st.integers(1, 4), st.integers(0, 4), st.integers(1, 5),
       st.sampled_from([0, 1, 2, F(1, 2)]))
def test_unitarity_bound_and_rationality(beta, n, extra, k, delta):
    if beta == 1:
        n = 2 * n
    m = n + extra
    t1 = transmission_moment(TransportQuery(beta, n, m, 1, delta)).exact
    tk = transmission_moment(TransportQuery(beta, n, m, k, delta)).exact
    assert tk.pi_half_exp == 0 and t1.pi_half_exp == 0
    assert 0 < tk.rational <= t1.rational <= n


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([1, 2, 4]), st.integers(1, 5), st.integers(1, 4))
def test_delay_moments_rational(beta, n, k):
    if beta == 1:
        n = 2 * n
    r = delay_moment(DelayQuery(beta, n, k))
    if r.convergent:
        assert r.exact.pi_half_exp == 0 and r.exact.rational > 0
