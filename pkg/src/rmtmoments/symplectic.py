"""Finite-n moments of the symplectic (beta = 4) ensembles.

The beta = 4 moment is a beta = 2 moment at doubled dimension minus a
correction ``S``::

    LSE  M4(k, n) = 2**(-k-1) M2_{L, 2b}(k, 2n)        - S_L(k, n)
    JSE  M4(k, n) = 1/2       M2_{J, 2a, 2b}(k, 2n)    - S_J(k, n)
    GSE  M4(2k,n) = 2**(-k-1) M2_G(2k, 2n)             - S_G(2k, n)

with public weights ``x**(2b+1) exp(-2x)``, ``x**(2b+1) (1-x)**(2a+1)`` and
``exp(-2x**2)``. ``n`` may be a half-integer for the Laguerre and Jacobi
families; sums then run up to ``floor(n)``.

When the two pieces each carry a pole that cancels in the difference (the
beta = 2 piece can diverge while the beta = 4 moment converges), the
parameters are shifted by a regulator and the finite part is taken exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ._series import EpsSeries, finite_part, gpoch
from .ensembles import MomentResult
from .exactnum import (
    WORKING_DPS,
    ExactReal,
    HighPrecisionFloat,
    SQRT_PI,
    binom_gen,
    frac,
    gamma_half,
    poch,
)
from .unitary import _jue_sum, _lue_sum, gue_moment_exact, split_order

__all__ = [
    "SymplecticCorrection",
    "s_laguerre",
    "s_jacobi",
    "s_gauss",
    "lse_moment",
    "jse_moment",
    "gse_moment",
]


@dataclass(frozen=True)
class SymplecticCorrection:
    """The correction ``S`` together with the number of ``(i, j)`` terms summed."""

    value: ExactReal
    i_j_terms: int


def _half_n(n) -> Fraction:
    n = frac(n)
    if n <= 0 or (2 * n).denominator != 1:
        raise ValueError(f"n must be a positive integer or half-integer, got {n}")
    return n


def _b(k, *args) -> Fraction:
    return binom_gen(k, *args).rational


# ---------------------------------------------------------------------------
# Laguerre


def _s_laguerre_sum(k: int, n: Fraction, b):
    two_n = int(2 * n)
    jmax = math.floor(n)
    if k > 0:
        jmax = min(jmax, k // 2)
    total = Fraction(0)
    count = 0
    for j in range(1, jmax + 1):
        imax = two_n - 2 * j
        if k > 0:
            imax = min(imax, k - 2 * j)
        den_j = gpoch(n + 1, -j) * gpoch(b + n, 1 - j)
        for i in range(0, imax + 1):
            c = _b(k, i) * _b(k, i + 2 * j)
            if c == 0:
                continue
            count += 1
            num = gpoch(2 * b + 2 * n, k - i - 2 * j + 1) * gpoch(Fraction(two_n - i - 2 * j + 1), i)
            total = total + c * num / (Fraction(2) ** (k - 2 * j + 2) * den_j)
    return total, count


def s_laguerre(k: int, n, b) -> SymplecticCorrection:
    """Correction ``S_L(k, n)`` for integer ``k`` (any sign).

    For positive ``k`` the double sum truncates at ``j <= k/2`` and
    ``i <= k - 2j``; for negative ``k`` it runs over ``1 <= j <= floor(n)``,
    ``0 <= i <= 2n - 2j``.
    """
    n = _half_n(n)
    total, count = _s_laguerre_sum(int(k), n, frac(b))
    return SymplecticCorrection(ExactReal(total), count)


def _lse_combined(k: int, n: Fraction, b):
    s, count = _s_laguerre_sum(k, n, b)
    m2 = Fraction(int(2 * n)) if k == 0 else _lue_sum(k, int(2 * n), 2 * b)
    return m2 / Fraction(2) ** (k + 1) - s, count


def _lse_float(k, n: Fraction, b: Fraction) -> HighPrecisionFloat:
    with mpmath.workdps(WORKING_DPS):
        bm = mpmath.mpf(b.numerator) / b.denominator
        nm = mpmath.mpf(n.numerator) / n.denominator
        two_n = int(2 * n)
        terms = []
        for j in range(0, two_n + 1):
            c = mpmath.binomial(k, j) * (mpmath.binomial(k, j - 1) if j >= 1 else 0)
            if c:
                terms.append(c * mpmath.rf(2 * bm + two_n, k - j + 1) * mpmath.rf(two_n - j + 1, j) / k / 2 ** (k + 1))
        for j in range(1, math.floor(n) + 1):
            den = mpmath.rf(nm + 1, -j) * mpmath.rf(bm + nm, 1 - j)
            for i in range(0, two_n - 2 * j + 1):
                c = mpmath.binomial(k, i) * mpmath.binomial(k, i + 2 * j)
                num = mpmath.rf(2 * bm + 2 * nm, k - i - 2 * j + 1) * mpmath.rf(two_n - i - 2 * j + 1, i)
                terms.append(-c * num / (mpmath.mpf(2) ** (k - 2 * j + 2) * den))
        total = mpmath.fsum(terms)
        err = mpmath.mpf(10) ** (-(WORKING_DPS - 10)) * max(mpmath.fsum(abs(t) for t in terms), 1)
    return HighPrecisionFloat(total, err)


def lse_moment(k, n, b) -> MomentResult:
    """``<tr X**k>`` for the LSE with weight ``x**(2b+1) exp(-2x)``.

    Converges for ``k > -(2b + 2)``. Integer ``k`` is exact, real ``k`` uses
    40-digit arithmetic.

    Examples
    --------
    >>> lse_moment(1, 1, 0).exact
    ExactReal(1)
    """
    n = _half_n(n)
    b = frac(b)
    integral, kk = split_order(k)
    bound = -(2 * b + 2)
    if kk <= (bound if integral else mpmath.mpf(bound.numerator) / bound.denominator):
        return MomentResult.divergent()
    if not integral:
        return MomentResult(_lse_float(kk, n, b), True, int(2 * n))
    if kk == 0:
        return MomentResult(ExactReal(n), True, 0)
    try:
        value, count = _lse_combined(kk, n, b)
    except ZeroDivisionError:
        value, count = _lse_combined(kk, n, b + EpsSeries.eps())
        value = finite_part(value)
    return MomentResult(ExactReal(value), True, count)


# ---------------------------------------------------------------------------
# Jacobi


def _s_jacobi_coeff(i: int, j: int, k: int, n: Fraction, a, b):
    two_n = int(2 * n)
    s = a + b
    num = (
        Fraction(2) ** (4 * j - 3)
        * gpoch(2 * a + 2 * n - i - 2 * j + 1, i)
        * gpoch(2 * b + 2 * n, k - i - 2 * j + 1)
        * gpoch(2 * s + 2 * n, k - i - 2 * j + 1)
        * (2 * s + 4 * n - 4 * j + 1)
        * (2 * s + 4 * n - 2 * i - 4 * j + k + 1)
    )
    den = (
        gpoch(Fraction(two_n - 2 * j + 1), -i)
        * gpoch(n + 1, -j)
        * gpoch(a + n + 1, -j)
        * gpoch(b + n, 1 - j)
        * gpoch(s + n, 1 - j)
        * gpoch(2 * s + 4 * n - i - 2 * j + 1, 1 + k)
        * gpoch(2 * s + 4 * n - i - 4 * j + 1, 1 + k)
    )
    return num / den


def _s_jacobi_sum(k: int, n: Fraction, a, b):
    two_n = int(2 * n)
    total = Fraction(0)
    count = 0
    for j in range(1, min(math.floor(n), k // 2) + 1):
        for i in range(0, min(two_n - 2 * j, k - 2 * j) + 1):
            c = _b(k, i + 2 * j) * _b(k, i)
            if c == 0:
                continue
            count += 1
            total = total + c * _s_jacobi_coeff(i, j, k, n, a, b)
    return total, count


def s_jacobi(k: int, n, a, b) -> SymplecticCorrection:
    """Correction ``S_J(k, n)`` for integer ``k >= 0``."""
    if int(k) != k or k < 0:
        raise ValueError("k must be a nonnegative integer")
    total, count = _s_jacobi_sum(int(k), _half_n(n), frac(a), frac(b))
    return SymplecticCorrection(ExactReal(total), count)


def _jse_combined(k: int, n: Fraction, a, b):
    s, count = _s_jacobi_sum(k, n, a, b)
    return _jue_sum(k, int(2 * n), 2 * a, 2 * b) / 2 - s, count


def jse_moment(k, n, a, b) -> MomentResult:
    """``<tr X**k>`` for the JSE with weight ``x**(2b+1) (1-x)**(2a+1)``, integer ``k >= 0``."""
    n = _half_n(n)
    a, b = frac(a), frac(b)
    integral, kk = split_order(k)
    if not integral or kk < 0:
        raise ValueError("JSE moments are implemented for nonnegative integer k only")
    if kk == 0:
        return MomentResult(ExactReal(n), True, 0)
    try:
        value, count = _jse_combined(kk, n, a, b)
    except ZeroDivisionError:
        e = EpsSeries.eps()
        value, count = _jse_combined(kk, n, a + e, b + e)
        value = finite_part(value)
    return MomentResult(ExactReal(value), True, count)


# ---------------------------------------------------------------------------
# Gaussian


def s_gauss(two_k: int, n: int) -> SymplecticCorrection:
    """Correction ``S_G(2k, n)``; zero for odd orders and for ``2k = 0``."""
    if two_k < 0 or int(two_k) != two_k:
        raise ValueError("moment order must be a nonnegative integer")
    two_k = int(two_k)
    n = int(n)
    if two_k % 2:
        return SymplecticCorrection(ExactReal(0), 0)
    k = two_k // 2
    half = Fraction(1, 2)
    total = ExactReal(0)
    count = 0
    for j in range(1, min(n, k) + 1):
        for i in range(0, min(n - j, k - j) + 1):
            c = binom_gen(k, i) * binom_gen(k, i + j)
            if c.is_zero:
                continue
            count += 1
            total = total + c * poch(n - i - j + 1, k - half)
    pref = (
        gamma_half(n + 1)
        * gamma_half(n)
        / (ExactReal(Fraction(2) ** k) * SQRT_PI * gamma_half(2 * n) * ExactReal(Fraction(4) ** (1 - n)))
    )
    return SymplecticCorrection(pref * total, count)


def gse_moment(two_k, n) -> MomentResult:
    """``<tr X**(2k)>`` for the GSE with weight ``exp(-2 x**2)``; odd orders vanish."""
    integral, kk = split_order(two_k)
    if not integral or kk < 0:
        raise ValueError("GSE moments are implemented for nonnegative integer orders only")
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if kk % 2:
        return MomentResult(ExactReal(0), True, 0)
    corr = s_gauss(kk, n)
    value = gue_moment_exact(kk, 2 * n) / ExactReal(Fraction(2) ** (kk // 2 + 1)) - corr.value
    return MomentResult(value, True, corr.i_j_terms)

