"""Exact arithmetic on numbers of the form ``r * pi**(e/2)`` with ``r`` rational.

Every finite-n moment formula in this package is a sum of Gamma-function
ratios. At integer and half-integer arguments these are rationals times
powers of ``sqrt(pi)``; keeping the power of ``sqrt(pi)`` symbolic lets the
root-pi factors cancel exactly, and a physical moment whose exponent does not
cancel to zero indicates a bug.

Pochhammer symbols with integer offsets are evaluated as finite products
(never as quotients of floating point Gammas), so poles are detected exactly.
A high-precision floating point path built on :mod:`mpmath` covers real,
non-integer orders.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath

from .errors import NonExactArgument, PoleError

__all__ = [
    "ExactReal",
    "HighPrecisionFloat",
    "NumericValue",
    "frac",
    "is_half_integer",
    "poch",
    "binom_gen",
    "gamma_half",
    "rgamma_half",
    "factorial",
    "to_float",
    "ONE",
    "ZERO",
    "SQRT_PI",
]

#: Working precision (decimal digits) of the floating point path.
WORKING_DPS = 40


def frac(x) -> Fraction:
    """Convert an int, Fraction, string or dyadic float to a Fraction.

    >>> frac("3/2")
    Fraction(3, 2)
    """
    if isinstance(x, ExactReal):
        if x.pi_half_exp != 0:
            raise NonExactArgument(f"{x} is not rational")
        return x.rational
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x}")
        f = Fraction(x)
        if f.denominator > 2**20:
            raise NonExactArgument(f"float {x!r} has no short exact rational form")
        return f
    return Fraction(x)


def is_half_integer(x) -> bool:
    """True when ``2*x`` is an integer (integers included)."""
    return (2 * frac(x)).denominator == 1


@dataclass(frozen=True, eq=False)
class ExactReal:
    """The value ``rational * pi**(pi_half_exp / 2)``.

    Zero is always stored with ``pi_half_exp == 0``.
    """

    rational: Fraction
    pi_half_exp: int = 0

    def __post_init__(self):
        r = self.rational
        if not isinstance(r, Fraction):
            r = frac(r)
            object.__setattr__(self, "rational", r)
        if r == 0 and self.pi_half_exp != 0:
            object.__setattr__(self, "pi_half_exp", 0)

    # construction helpers -------------------------------------------------
    @classmethod
    def of(cls, x) -> "ExactReal":
        if isinstance(x, ExactReal):
            return x
        return cls(frac(x), 0)

    @property
    def is_rational(self) -> bool:
        return self.pi_half_exp == 0

    @property
    def is_zero(self) -> bool:
        return self.rational == 0

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.pi_half_exp != other.pi_half_exp:
            raise ArithmeticError(
                f"cannot add pi^({self.pi_half_exp}/2) and pi^({other.pi_half_exp}/2) terms exactly"
            )
        return ExactReal(self.rational + other.rational, self.pi_half_exp)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(-self.rational, self.pi_half_exp)

    def __pos__(self):
        return self

    def __abs__(self):
        return ExactReal(abs(self.rational), self.pi_half_exp)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactReal(self.rational * other.rational, self.pi_half_exp + other.pi_half_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by exact zero")
        return ExactReal(self.rational / other.rational, self.pi_half_exp - other.pi_half_exp)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, p: int):
        if not isinstance(p, int):
            return NotImplemented
        if p < 0:
            return ExactReal(1) / (self ** (-p))
        return ExactReal(self.rational**p, self.pi_half_exp * p)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.rational == other.rational and self.pi_half_exp == other.pi_half_exp

    def __hash__(self):
        if self.pi_half_exp == 0:
            return hash(self.rational)
        return hash((self.rational, self.pi_half_exp))

    def _cmp_key(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError("unsupported comparison")
        if self.pi_half_exp == other.pi_half_exp:
            return self.rational, other.rational
        # signs decide unless both share a sign; then compare at high precision
        return self.to_mpf(), other.to_mpf()

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    # conversion -----------------------------------------------------------
    def to_mpf(self, dps: int = WORKING_DPS):
        with mpmath.workdps(dps):
            v = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            if self.pi_half_exp:
                v *= mpmath.pi ** (mpmath.mpf(self.pi_half_exp) / 2)
            return +v

    def __float__(self):
        if self.pi_half_exp == 0:
            return float(self.rational)
        return float(self.to_mpf())

    def __repr__(self):
        if self.pi_half_exp == 0:
            return f"ExactReal({self.rational})"
        return f"ExactReal({self.rational} * pi^({self.pi_half_exp}/2))"

    def __str__(self):
        if self.pi_half_exp == 0:
            return str(self.rational)
        return f"{self.rational}*pi^({self.pi_half_exp}/2)"


def _coerce(x):
    if isinstance(x, ExactReal):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return ExactReal(Fraction(x), 0)
    return NotImplemented


ONE = ExactReal(Fraction(1))
ZERO = ExactReal(Fraction(0))
SQRT_PI = ExactReal(Fraction(1), 1)


@dataclass(frozen=True)
class HighPrecisionFloat:
    """A floating point value with an absolute error bound."""

    value: mpmath.mpf
    error: mpmath.mpf

    def __post_init__(self):
        if self.error < 0:
            raise ValueError("error bound must be nonnegative")

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return f"{mpmath.nstr(self.value, 17)} +/- {mpmath.nstr(self.error, 3)}"


NumericValue = Union[ExactReal, HighPrecisionFloat]


def to_float(v, digits: int = 17) -> HighPrecisionFloat:
    """Decimal approximation of an exact value, good to ``digits`` significant digits.

    The returned bound is one unit in the last requested digit.
    """
    if digits < 15:
        raise ValueError("digits must be at least 15")
    v = ExactReal.of(v)
    if v.is_zero:
        return HighPrecisionFloat(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workdps(digits + 15):
        x = v.to_mpf(digits + 15)
        exponent = int(mpmath.floor(mpmath.log10(abs(x))))
        err = mpmath.mpf(10) ** (exponent - digits + 1)
        rounded = mpmath.mpf(mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    return HighPrecisionFloat(rounded, err)


# ---------------------------------------------------------------------------
# Gamma-function building blocks


def factorial(n: int) -> Fraction:
    if n < 0:
        raise PoleError(f"factorial of negative integer {n}")
    return Fraction(math.factorial(n))


def _poch_int(x: Fraction, m: int) -> Fraction:
    """Rational Pochhammer ``Gamma(x+m)/Gamma(x)`` for integer ``m``."""
    if m >= 0:
        num, den = 1, 1
        # accumulate as one fraction at the end: faster for long products
        for i in range(m):
            t = x + i
            num *= t.numerator
            den *= t.denominator
        return Fraction(num, den)
    num, den = 1, 1
    for i in range(1, -m + 1):
        t = x - i
        if t == 0:
            raise PoleError(f"Pochhammer ({x})_({m}) has a zero factor in its denominator")
        num *= t.denominator
        den *= t.numerator
    return Fraction(num, den)


def poch(x, m) -> ExactReal:
    """Pochhammer symbol ``Gamma(x + m) / Gamma(x)``.

    ``m`` may be a signed integer (evaluated as a finite product, any rational
    ``x``) or a half-integer (then ``x`` must be a half-integer too and the
    ratio goes through :func:`gamma_half`).

    Raises
    ------
    PoleError
        If the ratio is infinite.
    """
    x = frac(x)
    m = frac(m)
    if m.denominator == 1:
        return ExactReal(_poch_int(x, int(m)))
    if not (is_half_integer(m) and is_half_integer(x)):
        raise NonExactArgument(f"Pochhammer ({x})_({m}) is not exactly representable")
    top = x + m
    if _is_gamma_pole(x):
        if _is_gamma_pole(top):
            raise NonExactArgument("ratio of two Gamma poles")
        return ZERO
    if _is_gamma_pole(top):
        raise PoleError(f"Gamma({top}) is a pole")
    return gamma_half(top) / gamma_half(x)


def _is_gamma_pole(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def binom_gen(k, j) -> ExactReal:
    """Generalized binomial ``Gamma(k+1) / (Gamma(k-j+1) Gamma(j+1))``.

    A Gamma pole in the denominator gives exactly zero; negative integer ``k``
    uses the limiting form ``(-1)^j binom(|k|+j-1, |k|-1)``. Both conventions
    coincide with the falling factorial ``k (k-1) ... (k-j+1) / j!``, which is
    what is evaluated. ``j < 0`` returns zero.
    """
    k = frac(k)
    j = int(j)
    if j < 0:
        return ZERO
    num, den = 1, 1
    for i in range(j):
        t = k - i
        num *= t.numerator
        den *= t.denominator
    return ExactReal(Fraction(num, den * math.factorial(j)))


def gamma_half(x) -> ExactReal:
    """Exact ``Gamma(x)`` for integer or half-integer ``x``.

    >>> gamma_half(Fraction(5, 2))
    ExactReal(3/4 * pi^(1/2))
    """
    x = frac(x)
    if not is_half_integer(x):
        raise NonExactArgument(f"Gamma({x}) is not rational times a power of sqrt(pi)")
    if x.denominator == 1:
        if x <= 0:
            raise PoleError(f"Gamma has a pole at {x}")
        return ExactReal(Fraction(math.factorial(int(x) - 1)))
    half = Fraction(1, 2)
    shift = x - half  # integer
    if shift >= 0:
        return ExactReal(_poch_int(half, int(shift)), 1)
    # Gamma(x) = Gamma(1/2) / (x)_(1/2 - x)
    return ExactReal(1 / _poch_int(x, int(-shift)), 1)


def rgamma_half(x) -> ExactReal:
    """Reciprocal Gamma, exactly zero at the poles."""
    x = frac(x)
    if _is_gamma_pole(x):
        return ZERO
    return ONE / gamma_half(x)
