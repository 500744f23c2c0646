import warnings
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from rmtmoments import orthopoly as op
from rmtmoments.exactnum import ExactReal

SQRT_PI = ExactReal(1, 1)

SYSTEMS = [op.hermite(), op.laguerre(0), op.laguerre(F(3, 2)), op.jacobi(0, 0), op.jacobi(1, F(1, 2)), op.jacobi(F(5, 2), 2)]


def _quad_weighted(sys, f):
    lo, hi = sys.interval
    with warnings.catch_warnings():
        # quad flags roundoff once it reaches double precision
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(lambda x: float(sys.weight(x)) * f(x), lo, hi, limit=400, epsabs=1e-14, epsrel=1e-13)
    return val


def test_eval_monic_examples():
    assert op.eval_monic(op.hermite(), 0, 0.7) == 1.0
    assert op.eval_monic(op.laguerre(0), 1, 3.0) == pytest.approx(2.0, abs=1e-15)
    assert op.eval_monic(op.jacobi(0, 0), 1, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_norm_examples():
    assert op.norm_h(op.hermite(), 0) == SQRT_PI
    assert op.norm_h(op.laguerre(0), 0) == ExactReal(1)
    assert op.norm_h(op.jacobi(0, 0), 0) == ExactReal(1)


def test_recurrence_matches_exact_coefficients():
    for sys in SYSTEMS:
        for d in range(7):
            coef = [float(c) for c in sys.coefficients(d)]
            assert coef[-1] == 1.0
            x = np.linspace(-0.3, 1.7, 9)
            np.testing.assert_allclose(op.eval_monic(sys, d, x), np.polyval(coef[::-1], x), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: f"{s.family}-{s.a}-{s.b}")
def test_orthogonality_and_norms(sys):
    hmax = max(float(op.norm_h(sys, j)) for j in range(9))
    for j in range(9):
        for k in range(j + 1):
            v = _quad_weighted(sys, lambda x: op.eval_monic(sys, j, x) * op.eval_monic(sys, k, x))
            if j == k:
                assert v == pytest.approx(float(op.norm_h(sys, j)), rel=1e-10)
            else:
                assert abs(v) <= 1e-10 * hmax


def test_connect_laguerre_examples():
    assert [c.rational for c in op.connect_laguerre(1, 2)] == [1, 2, 0]
    assert [c.rational for c in op.connect_laguerre(0, 4)] == [1, 0, 0, 0, 0]
    assert [c.rational for c in op.connect_laguerre(2, 1)] == [1, 2]


def test_connect_jacobi_examples():
    assert [c.rational for c in op.connect_jacobi(0, 3, 1, 2)] == [1, 0, 0, 0]
    # frozen from the exact triangular solve of monomial coefficients
    assert [c.rational for c in op.connect_jacobi(1, 1, 0, 0)] == [1, F(1, 6)]
    assert [c.rational for c in op.connect_jacobi(F(-1, 2), 3, F(1, 2), F(3, 2))] == [
        1, F(-7, 80), F(45, 4576), F(-25, 29568)]
    cs = [float(c) for c in op.connect_jacobi(1, 2, 0, 0)]
    shifted = op.jacobi(0, 1)
    x = np.array([0.1, 0.5, 0.9])
    rhs = sum(c * op.eval_monic(shifted, 2 - j, x) for j, c in enumerate(cs))
    np.testing.assert_allclose(rhs, op.eval_monic(op.jacobi(0, 0), 2, x), rtol=1e-12)


params = st.integers(0, 8).map(lambda t: F(t, 2))
shifts = st.integers(-2, 6).map(lambda t: F(t, 2))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["laguerre", "jacobi"]), params, params, shifts, st.integers(0, 8),
       st.lists(st.floats(0.01, 0.99), min_size=20, max_size=20))
def test_connection_identity(family, a, b, k, n, xs):
    sys = op.laguerre(b) if family == "laguerre" else op.jacobi(a, b)
    if family == "jacobi" and b + k <= -1:
        return
    shifted = sys.shifted(k)
    x = np.array(xs) * (10.0 if family == "laguerre" else 1.0)
    cs = op.connection_coefficients(sys, k, n)
    assert [c.rational for c in cs] == op.solve_connection(sys, k, n)
    terms = np.array([float(c) * op.eval_monic(shifted, n - j, x) for j, c in enumerate(cs)])
    lhs = op.eval_monic(sys, n, x)
    scale = np.maximum(np.abs(terms).sum(axis=0), np.abs(lhs))
    assert np.all(np.abs(terms.sum(axis=0) - lhs) <= 1e-10 * scale)


def test_skew_examples():
    h = op.hermite()
    assert op.skew_coeffs(h, 2, 3).e4 == ExactReal(3)
    assert op.skew_coeffs(h, 0, 2).eta1 == ExactReal(F(15, 8))


@pytest.mark.parametrize("sys", [op.hermite(), op.laguerre(0), op.laguerre(2), op.jacobi(0, 0), op.jacobi(2, 4), op.jacobi(1, 3)],
                         ids=lambda s: f"{s.family}-{s.a}-{s.b}")
def test_skew_products_match_closed_forms(sys):
    for n in range(5):
        assert op.eta1_coeff(sys, n) == op.eta1_closed(sys, n)
        for j in range(n + 1):
            assert op.e4_coeff(sys, j, n) == op.e4_closed(sys, j, n)
            assert op.e1_coeff(sys, j, n) == op.e1_closed(sys, j, n)


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: f"{s.family}-{s.a}-{s.b}")
def test_skew_table_consistency(sys):
    expected = {"hermite": lambda n: F(1), "laguerre": lambda n: F(1, 2),
                "jacobi": lambda n: F(2 * n + 2, 2) + (sys.a + sys.b) / 2}[sys.family]
    for n in range(8):
        c = op.skew_coeffs(sys, n, n)
        assert c.c_j == op.norm_h(sys, n + 1) * op.norm_h(sys, n) * c.gamma_j
        assert op.norm_h(sys, n) * c.gamma_j == ExactReal(expected(n))


@pytest.mark.parametrize("b", [0, 2, 4])
def test_laguerre_half_shift_identity(b):
    # e4 at half-integer indices (n/2 - 1/2 - j, n/2 - 3/2) equals e1 at (n/2 - 1 - j, n/2 - 2)
    sys = op.laguerre(b)
    for n in (4, 6, 8):
        for j in range(1, n // 2):
            lhs = op.e4_closed(sys, F(n, 2) - F(1, 2) - j, F(n, 2) - F(3, 2))
            rhs = op.e1_closed(sys, n // 2 - 1 - j, n // 2 - 2)
            assert lhs == rhs
