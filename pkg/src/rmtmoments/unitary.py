"""Closed-form finite-n moments of the unitary (beta = 2) ensembles.

Weights: JUE ``x**b (1-x)**a`` on ``[0, 1]``, LUE ``x**b exp(-x)`` on
``[0, inf)``, GUE ``exp(-x**2)``. Moments are ``<sum_j x_j**k>`` and are
normalized so that ``k = 0`` gives ``n``.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from .ensembles import MomentResult
from .errors import DivergentMoment, PoleError
from .exactnum import (
    WORKING_DPS,
    ExactReal,
    HighPrecisionFloat,
    SQRT_PI,
    ZERO,
    binom_gen,
    frac,
    gamma_half,
    poch,
)
from ._series import EpsSeries, gpoch
from .exactnum import _poch_int

__all__ = [
    "split_order",
    "lue_moment",
    "lue_moment_exact",
    "jue_moment_diff",
    "jue_moment",
    "jue_moment_exact",
    "gue_moment",
    "gue_moment_exact",
    "narayana",
]


def split_order(k):
    """Return ``(True, int)`` for integral ``k`` and ``(False, mpf)`` otherwise."""
    if isinstance(k, float):
        if k.is_integer():
            return True, int(k)
        return False, mpmath.mpf(k)
    f = frac(k)
    if f.denominator == 1:
        return True, int(f)
    return False, mpmath.mpf(f.numerator) / f.denominator


def narayana(k: int, j: int) -> Fraction:
    """Narayana number ``binom(k, j) binom(k, j-1) / k``."""
    return (binom_gen(k, j) * binom_gen(k, j - 1)).rational / k


# ---------------------------------------------------------------------------
# LUE


def _lue_sum_recurrence(k: int, n: int, b: Fraction) -> Fraction:
    # t_{j+1}/t_j = (k-j)(k-j+1)(n-j) / ((j+1) j (b+n+k-j)); O(n) rational steps
    top = min(n, k) if k > 0 else n
    t = k * _poch_int(b + n, k) * n
    total = t
    for j in range(1, top):
        d = b + n + k - j
        if d == 0:
            raise PoleError("zero denominator in term recurrence")
        t = t * Fraction((k - j) * (k - j + 1) * (n - j), (j + 1) * j) / d
        if t == 0:
            break
        total += t
    return total / k


def _lue_sum(k: int, n: int, b):
    """Sum for integer ``k != 0``; ``b`` is a Fraction or an EpsSeries."""
    if not isinstance(b, EpsSeries):
        try:
            return _lue_sum_recurrence(k, n, b)
        except ZeroDivisionError:
            pass
    top = min(n, k) if k > 0 else n
    total = Fraction(0)
    for j in range(0, top + 1):
        c = (binom_gen(k, j) * binom_gen(k, j - 1)).rational
        if c == 0:
            continue
        total = total + c * gpoch(b + n, k - j + 1) * _poch_int(Fraction(n - j + 1), j)
    return total / k


def lue_moment_exact(k: int, n: int, b) -> ExactReal:
    """Exact LUE moment for integer ``k``; raises on divergence.

    Raises
    ------
    DivergentMoment
        If ``k <= -(b + 1)``, where the integral diverges at the origin.
    """
    b = frac(b)
    n = int(n)
    if k == 0:
        return ExactReal(n)
    if k < 0 and k <= -(b + 1):
        raise DivergentMoment(f"LUE moment k={k} diverges for b={b}")
    try:
        return ExactReal(_lue_sum(k, n, b))
    except PoleError as exc:
        raise DivergentMoment(str(exc)) from exc


def _lue_moment_float(k, n: int, b) -> HighPrecisionFloat:
    b = frac(b)
    with mpmath.workdps(WORKING_DPS):
        bm = mpmath.mpf(b.numerator) / b.denominator
        if k <= -(bm + 1):
            raise DivergentMoment(f"LUE moment k={k} diverges for b={b}")
        terms = []
        for j in range(0, n + 1):
            c = mpmath.binomial(k, j) * (mpmath.binomial(k, j - 1) if j >= 1 else 0)
            if c == 0:
                continue
            terms.append(c * mpmath.rf(bm + n, k - j + 1) * mpmath.rf(n - j + 1, j))
        total = mpmath.fsum(terms) / k
        err = mpmath.mpf(10) ** (-(WORKING_DPS - 10)) * max(mpmath.fsum(abs(t) for t in terms) / abs(k), 1)
    return HighPrecisionFloat(total, err)


def lue_moment(k, n: int, b) -> MomentResult:
    """``<tr X**k>`` for the LUE with weight ``x**b exp(-x)``.

    Integer ``k`` (positive or negative) is exact; real non-integer ``k`` goes
    through the 40-digit floating point path. Divergent moments are reported
    with ``convergent=False``.

    Examples
    --------
    >>> lue_moment(1, 2, 0).exact
    ExactReal(4)
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    integral, kk = split_order(k)
    try:
        if integral:
            value = lue_moment_exact(kk, n, b)
            terms = 0 if kk == 0 else (min(n, kk) if kk > 0 else n)
            return MomentResult(value, True, terms)
        return MomentResult(_lue_moment_float(kk, n, b), True, n + 1)
    except DivergentMoment:
        return MomentResult.divergent()


# ---------------------------------------------------------------------------
# JUE


def _u_coeff(k: int, j: int, n: int, a, b):
    s = a + b
    num = (
        (s + 2 * n - 2 * j + k + 1)
        * gpoch(s + n, k - j + 1)
        * gpoch(a + n - j + 1, j)
        * gpoch(b + n, k - j + 1)
    )
    den = gpoch(s + 2 * n - j, k + 2) * gpoch(s + 2 * n - j + 1, k) * _poch_int(Fraction(n + 1), -j)
    return num / den


def _jue_diff(k: int, n: int, a, b):
    total = Fraction(0)
    for j in range(1, min(n, k) + 1):
        c = (binom_gen(k, j) * binom_gen(k, j - 1)).rational
        if c == 0:
            continue
        total = total + c * _u_coeff(k, j, n, a, b)
    return total / k


def _jue_sum(k: int, n: int, a, b):
    """JUE moment for integer ``k >= 0``; ``a``, ``b`` Fractions or EpsSeries."""
    if k == 0:
        return Fraction(n)
    m = Fraction(n) * (b + n) / (a + b + 2 * n)
    for j in range(1, k):
        m = m - _jue_diff(j, n, a, b)
    return m


def jue_moment_diff(k: int, n: int, a, b) -> ExactReal:
    """``M(k, n) - M(k+1, n)`` for the JUE, a sum of at most ``min(n, k)`` terms."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    return ExactReal(_jue_diff(k, int(n), frac(a), frac(b)))


def jue_first_moment(n: int, a, b) -> ExactReal:
    """``M(1, n) = n (b + n) / (a + b + 2n)``."""
    a, b = frac(a), frac(b)
    return ExactReal(Fraction(n) * (b + n) / (a + b + 2 * n))


def jue_moment_exact(k: int, n: int, a, b) -> ExactReal:
    if k < 0:
        raise ValueError("negative JUE moments are not supported")
    return ExactReal(_jue_sum(k, int(n), frac(a), frac(b)))


def jue_moment(k, n: int, a, b) -> MomentResult:
    """``<tr X**k>`` for the JUE with weight ``x**b (1-x)**a``, integer ``k >= 0``.

    The first moment anchors the value; the differences ``M(j) - M(j+1)``
    are subtracted for ``j = 1 .. k-1``.
    """
    integral, kk = split_order(k)
    if not integral:
        raise ValueError("JUE moments are implemented for integer k only")
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    return MomentResult(jue_moment_exact(kk, n, a, b), True, max(kk - 1, 0))


# ---------------------------------------------------------------------------
# GUE


def gue_moment_exact(two_k: int, n: int) -> ExactReal:
    if two_k < 0:
        raise ValueError("moment order must be nonnegative")
    if two_k % 2:
        return ZERO
    k = two_k // 2
    n = int(n)
    half = Fraction(1, 2)
    total = ZERO
    if n % 2 == 0:
        m = n // 2
        for j in range(0, min(m - 1, k) + 1):
            total = total + binom_gen(k, j) * binom_gen(k + 1, j + 1) * poch(m - j, k + half)
        pref = ExactReal(2**n) * gamma_half(m + 1) * gamma_half(m) / (SQRT_PI * (2 * k + 1) * gamma_half(n))
    else:
        m = (n + 1) // 2
        for j in range(0, min(m - 1, k) + 1):
            total = total + binom_gen(k, j) * binom_gen(k + 1, j) * poch(m - j, k + half)
        pref = ExactReal(2**n) * gamma_half(m) ** 2 / (SQRT_PI * (2 * k + 1) * gamma_half(n))
    return pref * total


def gue_moment(two_k: int, n: int) -> MomentResult:
    """``<tr X**(2k)>`` for the GUE with weight ``exp(-x**2)``; odd orders are 0."""
    integral, kk = split_order(two_k)
    if not integral:
        raise ValueError("GUE moments are implemented for integer orders only")
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    return MomentResult(gue_moment_exact(kk, n), True, 0 if kk % 2 else min(n // 2, kk // 2) + 1)
