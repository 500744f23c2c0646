"""Finite-n moments of the orthogonal (beta = 1) ensembles, ``n`` even.

Public weights: ``x**((b-1)/2) exp(-x/2)`` (LOE), ``x**((b-1)/2)
(1-x)**((a-1)/2)`` (JOE) and ``exp(-x**2/2)`` (GOE). The moments split as

    M1(k, n) = M2(k, n-1) - O(k, n) + I(k, n)

where ``O`` is a skew-orthogonal correction and ``I`` comes from the
sign-kernel (epsilon) transform. For the Laguerre and Jacobi families
``M2 - O`` is a symplectic moment at half-integer size::

    LOE  M1(k, n) = 2**(1+k) M4_{L, b/2}(k, (n-1)/2)     + I_L(k, n)
    JOE  M1(k, n) = 2        M4_{J, a/2, b/2}(k, (n-1)/2) + I_J(k, n)

``I`` is a single sum plus a remainder ``phi`` which is identically zero
for ``n > 2k`` (positive ``k``) and decays exponentially in ``n`` for
negative ``k``. Every ``Gamma`` ratio in ``phi`` is reduced to
integer-offset Pochhammer symbols with the duplication formula, so the
values are rational for all rational ``a``, ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ensembles import MomentResult
from .errors import DivergentMoment, OddDimension
from .exactnum import (
    ExactReal,
    SQRT_PI,
    ZERO,
    binom_gen,
    factorial,
    frac,
    gamma_half,
    poch,
    rgamma_half,
)
from .orthopoly import (
    OrthoPolySystem,
    connection_coefficients,
    e1_coeff,
    h_gamma,
)
from .symplectic import jse_moment, lse_moment
from .unitary import gue_moment_exact, split_order

__all__ = [
    "IncompleteTerm",
    "i_laguerre",
    "i_jacobi",
    "loe_moment",
    "joe_moment",
    "goe_O",
    "goe_phi",
    "goe_moment",
    "o_integral_direct",
    "a_plus",
    "a_minus",
    "f_series",
]


@dataclass(frozen=True)
class IncompleteTerm:
    """``I = main sum + phi``; ``i_value`` is the full ``I``."""

    i_value: ExactReal
    phi_value: ExactReal
    phi_vanishes: bool


def _even_n(n) -> int:
    n = frac(n)
    if n.denominator != 1 or n < 1:
        raise ValueError(f"n must be a positive even integer, got {n}")
    if int(n) % 2:
        raise OddDimension(f"beta = 1 formulas require even n, got {n}")
    return int(n)


def _P(x, m) -> Fraction:
    return poch(x, m).rational


def _fact_ratio(top: int, bottom: int, mid: Fraction) -> Fraction:
    """``Gamma(top) / (Gamma(bottom) * mid)`` with ``1/Gamma`` = 0 at poles."""
    if bottom <= 0:
        return Fraction(0)
    return factorial(top - 1) / factorial(bottom - 1) / mid


# ---------------------------------------------------------------------------
# incomplete integrals


def _phi_laguerre_pos(k: int, n: int, b: Fraction) -> Fraction:
    h = n // 2
    total = Fraction(0)
    for j in range(1, k + 1):
        d = _fact_ratio(j + k, j + k - n + 1, factorial(h - 1))
        if d == 0:
            continue
        total += _P((b + 1) / 2 + j, h - 1 - j) * _P(b + n - 1, j + k - n + 1) * Fraction(1, 2**j) * d
    return total


def _phi_laguerre_neg(k: int, n: int, b: Fraction) -> Fraction:
    h = n // 2
    total = Fraction(0)
    for j in range(0, k):
        d = factorial(k + j + n - 1) / (factorial(h - 1) * factorial(k + j))
        total += _P((b + 1) / 2 - j, h - 1 + j) * _P(b + n - 1, 1 - n - k - j) * 2**j * d
    return total


def i_laguerre(k: int, n, b, sign: str = "positive") -> IncompleteTerm:
    """Incomplete-integral term ``I_L(+-k, n)`` for the LOE (``k >= 1``).

    ``sign="negative"`` gives ``I_L(-k, n)``, whose remainder is never
    identically zero but decays exponentially in ``n``.
    """
    n = _even_n(n)
    b = frac(b)
    k = int(k)
    if k < 1:
        raise ValueError("k must be a positive integer")
    h = n // 2
    main = Fraction(0)
    if sign == "positive":
        for j in range(0, min(h - 1, k) + 1):
            main += binom_gen(2 * k, 2 * j).rational * _P((b + n) / 2, k - j) / _P(Fraction(1 + n, 2), -j)
        main *= 2**k
        phi = _phi_laguerre_pos(k, n, b)
        vanishes = n > 2 * k
    elif sign == "negative":
        if -k <= -(b + 1) / 2:
            raise DivergentMoment(f"LOE moment {-k} diverges for b={b}")
        for j in range(0, h):
            main += binom_gen(2 * k + 2 * j - 1, 2 * j).rational * _P((b + n) / 2, -k - j) / _P(Fraction(1 + n, 2), -j)
        main /= 2**k
        phi = _phi_laguerre_neg(k, n, b)
        vanishes = False
    else:
        raise ValueError("sign must be 'positive' or 'negative'")
    return IncompleteTerm(ExactReal(main + phi), ExactReal(phi), vanishes)


def _phi_jacobi(k: int, n: int, a: Fraction, b: Fraction) -> Fraction:
    h = n // 2
    s = a + b
    total = Fraction(0)
    for j in range(1, k + 1):
        d = _fact_ratio(j + k, j + k + 1 - n, factorial(h - 1))
        if d == 0:
            continue
        num = _P((s + 1) / 2 + j, h - j) * _P((a + 1) / 2, h) * _P(b + 2 * j, k - j)
        den = _P(s + 2 * j, n + k - j) * _P(b / 2 + j, h - j)
        total += 2 * num / den * d
    return total


def i_jacobi(k: int, n, a, b) -> IncompleteTerm:
    """Incomplete-integral term ``I_J(k, n)`` for the JOE, ``k >= 1``."""
    n = _even_n(n)
    a, b = frac(a), frac(b)
    k = int(k)
    if k < 1:
        raise ValueError("k must be a positive integer")
    h = n // 2
    s = a + b
    main = Fraction(0)
    for j in range(0, min(h - 1, k) + 1):
        num = (s + 2 * n - 4 * j - 1 + 2 * k) * _P((s + n) / 2, k - j) * _P((b + n) / 2, k - j)
        den = _P(s + 2 * n - 2 * j - 1, 2 * k + 1) * _P((a + n + 1) / 2, -j) * _P(Fraction(1 + n, 2), -j)
        main += binom_gen(2 * k, 2 * j).rational * num / den
    main *= 4**k
    phi = _phi_jacobi(k, n, a, b)
    return IncompleteTerm(ExactReal(main + phi), ExactReal(phi), n > 2 * k)


# ---------------------------------------------------------------------------
# O-integrals, directly from skew-orthogonal coefficients


def _h_shift_ratio(sys: OrthoPolySystem, k: int, m: int, p: int) -> Fraction:
    """``h_m`` of the weight multiplied by ``x**k`` over ``h_p`` of the original."""
    a, b = sys.a, sys.b
    if sys.family == "laguerre":
        return factorial(m) / factorial(p) * _P(b + p + 1, k + m - p)
    s = a + b
    return (
        factorial(m)
        / factorial(p)
        * _P(a + p + 1, m - p)
        * _P(b + p + 1, k + m - p)
        * _P(s + p + 1, k + m - p)
        / (_P(s + 2 * p + 1, k + 2 * m - 2 * p) * _P(s + 2 * p + 2, k + 2 * m - 2 * p))
    )


def o_integral_direct(sys: OrthoPolySystem, k: int, n) -> ExactReal:
    """``O(k, n)`` summed from ``e1``, connection coefficients and norms.

    This does not go through the symplectic engines and serves as an
    independent check of the beta = 1 / beta = 4 duality. ``sys`` is the
    beta = 2 system (Laguerre ``x**b exp(-x)`` or Jacobi ``x**b (1-x)**a``).
    """
    n = _even_n(n)
    h = n // 2
    gam = h_gamma(sys, n - 2)  # gamma_{n-2} h_{n-2}
    c_top = connection_coefficients(sys, k, n - 1)
    total = Fraction(0)
    for j in range(1, h):
        e = e1_coeff(sys, h - 1 - j, h - 2).rational
        c_low = connection_coefficients(sys, k, n - 2 * j - 1)
        for i in range(0, n - 2 * j):
            c = c_low[i].rational * c_top[i + 2 * j].rational
            if c == 0:
                continue
            total += e * c * _h_shift_ratio(sys, k, n - 1 - 2 * j - i, n - 2)
    return ExactReal(gam * total)


# ---------------------------------------------------------------------------
# LOE / JOE


def loe_moment(k, n, b) -> MomentResult:
    """``<tr X**k>`` for the LOE with weight ``x**((b-1)/2) exp(-x/2)``, ``n`` even.

    Integer ``k`` of either sign; diverges for ``k <= -(b+1)/2``.
    """
    n = _even_n(n)
    b = frac(b)
    integral, kk = split_order(k)
    if not integral:
        raise ValueError("beta = 1 moments are implemented for integer k only")
    if kk == 0:
        return MomentResult(ExactReal(n), True, 0)
    if kk <= -(b + 1) / 2:
        return MomentResult.divergent()
    half = Fraction(n - 1, 2)
    m4 = lse_moment(kk, half, b / 2)
    if kk > 0:
        inc = i_laguerre(kk, n, b, "positive")
    else:
        inc = i_laguerre(-kk, n, b, "negative")
    value = ExactReal(Fraction(2) ** (1 + kk)) * m4.exact + inc.i_value
    return MomentResult(value, True, m4.terms_summed + (min(n // 2, abs(kk)) if kk > 0 else n // 2))


def joe_moment(k, n, a, b) -> MomentResult:
    """``<tr X**k>`` for the JOE with weight ``x**((b-1)/2) (1-x)**((a-1)/2)``, ``n`` even, ``k >= 0``."""
    n = _even_n(n)
    a, b = frac(a), frac(b)
    integral, kk = split_order(k)
    if not integral or kk < 0:
        raise ValueError("JOE moments are implemented for nonnegative integer k only")
    if kk == 0:
        return MomentResult(ExactReal(n), True, 0)
    m4 = jse_moment(kk, Fraction(n - 1, 2), a / 2, b / 2)
    inc = i_jacobi(kk, n, a, b)
    value = 2 * m4.exact + inc.i_value
    return MomentResult(value, True, m4.terms_summed + min(n // 2, kk))


# ---------------------------------------------------------------------------
# GOE


def goe_O(two_k: int, n) -> ExactReal:
    """Skew correction ``O_G(2k, n)`` (zero for ``k = 0`` and ``n = 2``)."""
    n = _even_n(n)
    if two_k < 0 or two_k % 2:
        raise ValueError("two_k must be a nonnegative even integer")
    k = two_k // 2
    h = n // 2
    half = Fraction(1, 2)
    total = ZERO
    for j in range(1, min(h - 1, k) + 1):
        den = poch(h - j, half)
        for i in range(0, min(h - j - 1, k - j) + 1):
            c = binom_gen(k, i) * binom_gen(k, i + j)
            total = total + c * poch(h - i - j, k + half) / den
    return total


def goe_phi(two_k: int, n) -> ExactReal:
    """Sign-kernel term ``I_G(2k, n)``; two closed forms split at ``n = 2k``."""
    n = _even_n(n)
    if two_k < 0 or two_k % 2:
        raise ValueError("two_k must be a nonnegative even integer")
    k = two_k // 2
    h = n // 2
    fk = factorial(2 * k)
    if n > 2 * k:
        total = Fraction(0)
        for j in range(0, k + 1):
            total += _P(Fraction(n + 1, 2) - j, j) * Fraction(2) ** (3 * j - k) / (factorial(2 * j) * factorial(k - j))
        return ExactReal(fk * total)
    g = factorial(h - 1)
    first = Fraction(0)
    for j in range(0, k - h + 1):
        for i in range(0, h):
            first += (
                binom_gen(n - 1, 2 * i).rational
                * Fraction(1, 2 ** (j + 2 * i))
                * (-1) ** j
                / ((2 * j + 2 * i + 1) * factorial(j) * factorial(k - h - j))
            )
    first *= Fraction(2) ** (h - k) * fk / g
    second = Fraction(0)
    for j in range(0, min(h - 1, k) + 1):
        for i in range(0, j + 1):
            second += (
                factorial(h - i - 1)
                * binom_gen(n - 1, n - 2 * i - 1).rational
                / (factorial(j - i) * factorial(k - j) * Fraction(4) ** (k - i))
            )
    second *= fk / g
    return ExactReal(first + second)


def goe_moment(two_k, n) -> MomentResult:
    """``<tr X**(2k)>`` for the GOE with weight ``exp(-x**2/2)``, ``n`` even."""
    n = _even_n(n)
    integral, kk = split_order(two_k)
    if not integral or kk < 0:
        raise ValueError("GOE moments are implemented for nonnegative integer orders only")
    if kk % 2:
        return MomentResult(ZERO, True, 0)
    if kk == 0:
        return MomentResult(ExactReal(n), True, 0)
    value = gue_moment_exact(kk, n - 1) - goe_O(kk, n) + goe_phi(kk, n)
    return MomentResult(value, True, min(n // 2, kk // 2 + 1))


# ---------------------------------------------------------------------------
# generating-function coefficients of the sign-kernel transform


def a_plus(p: int, j: int) -> ExactReal:
    """Coefficient of ``s**(2p+1)`` in ``f_{2j}(s)``; zero for ``p < j``."""
    if p < j:
        return ZERO
    return ExactReal(Fraction(2) ** (1 - 2 * p) * (-1 if (p - j) % 2 else 1) / (2 * p + 1)) * rgamma_half(p - j + 1) * SQRT_PI


def a_minus(p: int, j: int) -> ExactReal:
    """Coefficient of ``s**(2p)`` in ``f_{2j+1}(s)`` for ``p >= j + 1``."""
    if p < j + 1:
        return ZERO
    return ExactReal(Fraction(2) ** (2 - 2 * p) * (-1 if (p - j) % 2 else 1) / (2 * p)) * rgamma_half(p - j) * SQRT_PI


def f_series(index: int, s: float, terms: int = 60) -> float:
    """Evaluate ``f_index(s)`` from its power series."""
    j, odd = divmod(index, 2)
    if not odd:
        return float(sum(float(a_plus(p, j)) * s ** (2 * p + 1) for p in range(j, j + terms)))
    const = float(2 * gamma_half(j + 1) * SQRT_PI)
    return const + float(sum(float(a_minus(p, j)) * s ** (2 * p) for p in range(j + 1, j + 1 + terms)))
