"""Monic classical orthogonal polynomials: Hermite, Laguerre and Jacobi.

Conventions (all polynomials monic, leading coefficient 1):

* Hermite ``H_j``, weight ``exp(-x**2)`` on the real line;
* Laguerre ``L_j^b``, weight ``x**b exp(-x)`` on ``[0, inf)``;
* Jacobi ``P_j^{a,b}``, weight ``x**b (1-x)**a`` on ``[0, 1]``.

Exact tables (norms, recurrence and connection coefficients, skew
coefficients) are :class:`~rmtmoments.exactnum.ExactReal`; evaluation at
points is vectorized float arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactnum import (
    ExactReal,
    SQRT_PI,
    binom_gen,
    factorial,
    frac,
    gamma_half,
    poch,
)

__all__ = [
    "OrthoPolySystem",
    "SkewCoefficients",
    "hermite",
    "laguerre",
    "jacobi",
    "eval_monic",
    "norm_h",
    "connect_laguerre",
    "connect_jacobi",
    "connection_coefficients",
    "skew_coeffs",
]

FAMILIES = ("hermite", "laguerre", "jacobi")


@dataclass(frozen=True)
class OrthoPolySystem:
    """One classical family of monic orthogonal polynomials.

    The three-term recurrence is ``P_{j+1} = (alpha_j + x beta_j) P_j - gamma_j P_{j-1}``
    with ``beta_j = 1`` (monic) and ``P_{-1} = 0``.
    """

    family: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "a", frac(self.a))
        object.__setattr__(self, "b", frac(self.b))

    # ------------------------------------------------------------------
    @property
    def interval(self) -> tuple[float, float]:
        return {"hermite": (-np.inf, np.inf), "laguerre": (0.0, np.inf), "jacobi": (0.0, 1.0)}[self.family]

    def weight(self, x):
        """The weight ``w_2`` of the unitary ensemble."""
        x = np.asarray(x, dtype=float)
        if self.family == "hermite":
            return np.exp(-x * x)
        if self.family == "laguerre":
            return x ** float(self.b) * np.exp(-x)
        return x ** float(self.b) * (1.0 - x) ** float(self.a)

    def recurrence(self, j: int) -> tuple[Fraction, Fraction, Fraction]:
        """Exact ``(alpha_j, beta_j, gamma_j)``; ``gamma_0`` is returned as 0."""
        key = ("rec", j)
        if key not in self._cache:
            self._cache[key] = _recurrence(self.family, self.a, self.b, j)
        return self._cache[key]

    def coefficients(self, degree: int) -> list[Fraction]:
        """Exact monomial coefficients of ``P_degree`` (ascending powers)."""
        key = ("coef", degree)
        if key in self._cache:
            return self._cache[key]
        prev: list[Fraction] = []
        cur = [Fraction(1)]
        for j in range(degree):
            alpha, _, gamma = self.recurrence(j)
            new = [Fraction(0)] * (len(cur) + 1)
            for i, c in enumerate(cur):
                new[i + 1] += c
                new[i] += alpha * c
            for i, c in enumerate(prev):
                new[i] -= gamma * c
            prev, cur = cur, new
        self._cache[key] = cur
        return cur

    def evaluate(self, degree: int, x, derivative: bool = False):
        """Forward-recurrence values of ``P_degree`` (and optionally ``P'_degree``) at ``x``."""
        x = np.asarray(x, dtype=float)
        p_prev = np.zeros_like(x)
        p = np.ones_like(x)
        d_prev = np.zeros_like(x)
        d = np.zeros_like(x)
        for j in range(degree):
            alpha, beta, gamma = (float(c) for c in self.recurrence(j))
            p_next = (alpha + beta * x) * p - gamma * p_prev
            d_next = beta * p + (alpha + beta * x) * d - gamma * d_prev
            p_prev, p, d_prev, d = p, p_next, d, d_next
        if derivative:
            return p, d
        return p

    def evaluate_upto(self, degree: int, x) -> np.ndarray:
        """Array of shape ``(degree+1, *x.shape)`` with ``P_0 .. P_degree`` at ``x``."""
        x = np.asarray(x, dtype=float)
        out = np.empty((degree + 1,) + x.shape)
        out[0] = 1.0
        p_prev = np.zeros_like(x)
        for j in range(degree):
            alpha, beta, gamma = (float(c) for c in self.recurrence(j))
            out[j + 1] = (alpha + beta * x) * out[j] - gamma * p_prev
            p_prev = out[j]
        return out

    def norm(self, j: int) -> ExactReal:
        return norm_h(self, j)

    def norm_ratio(self, j: int) -> Fraction:
        """Exact ``h_{j+1} / h_j`` (rational for every rational parameter)."""
        a, b = self.a, self.b
        if self.family == "hermite":
            return Fraction(j + 1, 2)
        if self.family == "laguerre":
            return (j + 1) * (b + j + 1)
        s = a + b + 2 * j
        return (a + j + 1) * (b + j + 1) * (j + 1) * (a + b + j + 1) / ((s + 1) * (s + 2) * (s + 2) * (s + 3))

    def shifted(self, k) -> "OrthoPolySystem":
        """The system orthogonal with respect to ``x**k w(x)`` (Laguerre/Jacobi only)."""
        if self.family == "hermite":
            raise ValueError("Hermite weights have no x**k shift within the family")
        return OrthoPolySystem(self.family, self.a, self.b + frac(k))


def hermite() -> OrthoPolySystem:
    return OrthoPolySystem("hermite")


def laguerre(b) -> OrthoPolySystem:
    return OrthoPolySystem("laguerre", 0, b)


def jacobi(a, b) -> OrthoPolySystem:
    return OrthoPolySystem("jacobi", a, b)


def _recurrence(family: str, a: Fraction, b: Fraction, j: int):
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if family == "hermite":
        return Fraction(0), Fraction(1), Fraction(j, 2)
    if family == "laguerre":
        return -(2 * j + b + 1), Fraction(1), Fraction(j) * (j + b)
    # Jacobi on [0, 1]: map the standard monic recurrence on [-1, 1] via t = 2x - 1
    s = a + b
    if j == 0:
        shift = (b - a) / (s + 2)
    else:
        shift = (b * b - a * a) / ((2 * j + s) * (2 * j + s + 2))
    if j == 0:
        g = Fraction(0)
    elif j == 1:
        g = 4 * (1 + a) * (1 + b) / ((2 + s) ** 2 * (3 + s))
    else:
        g = 4 * j * (j + a) * (j + b) * (j + s) / ((2 * j + s) ** 2 * (2 * j + s + 1) * (2 * j + s - 1))
    return -(1 + shift) / 2, Fraction(1), g / 4


def eval_monic(sys: OrthoPolySystem, degree: int, x):
    """Value of the monic polynomial of the given degree at ``x``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return sys.evaluate(degree, x)


def norm_h(sys: OrthoPolySystem, j: int) -> ExactReal:
    """Exact ``h_j = int w P_j**2``.

    Raises :class:`~rmtmoments.errors.PoleError` (or
    :class:`~rmtmoments.errors.NonExactArgument`) when a Gamma argument is
    not usable.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    a, b = sys.a, sys.b
    if sys.family == "hermite":
        return ExactReal(factorial(j) / 2**j) * SQRT_PI
    if sys.family == "laguerre":
        return gamma_half(j + 1) * gamma_half(b + j + 1)
    return (
        gamma_half(a + j + 1)
        * gamma_half(b + j + 1)
        * gamma_half(j + 1)
        * gamma_half(a + b + j + 1)
        / (gamma_half(a + b + 2 * j + 1) * gamma_half(a + b + 2 * j + 2))
    )


# ---------------------------------------------------------------------------
# connection coefficients


def connect_laguerre(k, n: int) -> list[ExactReal]:
    """``C_j`` with ``L_n^b = sum_j C_j L_{n-j}^{b+k}``, independent of ``b``.

    ``C_j = binom(k, j) n! / (n-j)!``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = frac(k)
    return [binom_gen(k, j) * poch(n - j + 1, j) for j in range(n + 1)]


def connect_jacobi(k, n: int, a, b) -> list[ExactReal]:
    """``C_j`` with ``P_n^{a,b} = sum_j C_j P_{n-j}^{a,b+k}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    k, a, b = frac(k), frac(a), frac(b)
    out = []
    for j in range(n + 1):
        bj = binom_gen(k, j)
        if bj.is_zero:
            out.append(bj)
            continue
        out.append(
            bj
            * poch(a + n + 1 - j, j)
            * poch(a + b + 2 * n + 1, -j)
            * poch(n - j + 1, j)
            / poch(a + b + 2 * n - 2 * j + 2 + k, j)
        )
    return out


def connection_coefficients(sys: OrthoPolySystem, k, n: int) -> list[ExactReal]:
    if sys.family == "laguerre":
        return connect_laguerre(k, n)
    if sys.family == "jacobi":
        return connect_jacobi(k, n, sys.a, sys.b)
    raise ValueError("connection coefficients are defined for Laguerre and Jacobi only")


def solve_connection(sys: OrthoPolySystem, k, n: int) -> list[Fraction]:
    """Connection coefficients by exact triangular solve of monomial coefficients.

    Independent of the closed forms; used to validate them.
    """
    target = list(sys.coefficients(n))
    basis = sys.shifted(k)
    out = []
    for j in range(n + 1):
        d = n - j
        q = basis.coefficients(d)
        c = target[d] / q[d]
        out.append(c)
        for i, v in enumerate(q):
            target[i] -= c * v
    return out


# ---------------------------------------------------------------------------
# skew-orthogonal coefficients


@dataclass(frozen=True)
class SkewCoefficients:
    c_j: ExactReal
    gamma_j: ExactReal
    e1: ExactReal
    e4: ExactReal
    eta1: ExactReal


def h_gamma(sys: OrthoPolySystem, n: int) -> Fraction:
    """The rational product ``h_n * gamma_n`` of the skew-orthogonal construction."""
    if sys.family == "hermite":
        return Fraction(1)
    if sys.family == "laguerre":
        return Fraction(1, 2)
    return (2 * n + sys.a + sys.b + 2) / 2


def skew_gamma(sys: OrthoPolySystem, n: int) -> ExactReal:
    return ExactReal(h_gamma(sys, n)) / norm_h(sys, n)


def c_coeff(sys: OrthoPolySystem, n: int) -> ExactReal:
    """``c_n = h_{n+1} h_n gamma_n``."""
    return norm_h(sys, n + 1) * h_gamma(sys, n)


def _h_over(sys: OrthoPolySystem, hi: int, lo: int) -> Fraction:
    """``h_hi / h_lo`` as an exact rational."""
    r = Fraction(1)
    if hi >= lo:
        for j in range(lo, hi):
            r *= sys.norm_ratio(j)
        return r
    for j in range(hi, lo):
        r /= sys.norm_ratio(j)
    return r


def _c_ratio(sys: OrthoPolySystem, p: int, q: int) -> Fraction:
    """``c_p / c_q``."""
    return _h_over(sys, p + 1, q + 1) * h_gamma(sys, p) / h_gamma(sys, q)


def e4_coeff(sys: OrthoPolySystem, j: int, n: int) -> ExactReal:
    """``e4(j, n) = (h_{2n+1}/c_{2n}) prod_{i=j}^{n-1} c_{2i+1}/c_{2i}`` (product form)."""
    r = 1 / h_gamma(sys, 2 * n)
    for i in range(j, n):
        r *= _c_ratio(sys, 2 * i + 1, 2 * i)
    return ExactReal(r)


def e1_coeff(sys: OrthoPolySystem, j: int, n: int) -> ExactReal:
    """``e1(j, n) = (h_{2n+2}/c_{2j+1}) prod_{i=j+1}^{n} c_{2i}/c_{2i+1}`` (product form)."""
    r = _h_over(sys, 2 * n + 2, 2 * j + 2) / h_gamma(sys, 2 * j + 1)
    for i in range(j + 1, n + 1):
        r *= _c_ratio(sys, 2 * i, 2 * i + 1)
    return ExactReal(r)


def eta1_coeff(sys: OrthoPolySystem, n: int) -> ExactReal:
    """``eta1(n) = prod_{j=0}^{n} c_{2j} h_{2j+2} / (c_{2j+1} h_{2j})``; 1 for ``n < 0``."""
    r = Fraction(1)
    for j in range(n + 1):
        r *= _c_ratio(sys, 2 * j, 2 * j + 1) * _h_over(sys, 2 * j + 2, 2 * j)
    return ExactReal(r)


# closed forms as tabulated for each family; see tests for agreement with the products


def e4_closed(sys: OrthoPolySystem, j: int, n: int) -> ExactReal:
    a, b = sys.a, sys.b
    if sys.family == "hermite":
        return ExactReal(factorial(n) / factorial(j))
    if sys.family == "laguerre":
        return ExactReal(Fraction(4) ** (n - j) * 2) * gamma_half(n + 1) * gamma_half(n + b / 2 + 1) / (
            gamma_half(j + 1) * gamma_half(j + 1 + b / 2)
        )
    return (
        ExactReal(Fraction(16) ** (n - j) * 2)
        * gamma_half(n + 1)
        * gamma_half(n + a / 2 + 1)
        * gamma_half(n + b / 2 + 1)
        * gamma_half(n + a / 2 + b / 2 + 1)
        * gamma_half(4 * j + a + b + 2)
        / (
            gamma_half(j + 1)
            * gamma_half(j + 1 + a / 2)
            * gamma_half(j + 1 + b / 2)
            * gamma_half(j + a / 2 + b / 2 + 1)
            * gamma_half(4 * n + a + b + 3)
        )
    )


def e1_closed(sys: OrthoPolySystem, j: int, n: int) -> ExactReal:
    a, b = sys.a, sys.b
    h = Fraction(3, 2)
    if sys.family == "hermite":
        return gamma_half(n + h) / gamma_half(j + h)
    if sys.family == "laguerre":
        return ExactReal(Fraction(4) ** (n - j) * 2) * gamma_half(n + h) * gamma_half(n + h + b / 2) / (
            gamma_half(j + h) * gamma_half(j + h + b / 2)
        )
    return (
        ExactReal(Fraction(16) ** (n - j) * 2)
        * gamma_half(n + h)
        * gamma_half(n + h + a / 2)
        * gamma_half(n + h + b / 2)
        * gamma_half(n + h + a / 2 + b / 2)
        * gamma_half(4 * j + 4 + a + b)
        / (
            gamma_half(j + h)
            * gamma_half(j + h + a / 2)
            * gamma_half(j + h + b / 2)
            * gamma_half(j + h + a / 2 + b / 2)
            * gamma_half(4 * n + 5 + a + b)
        )
    )


def eta1_closed(sys: OrthoPolySystem, n: int) -> ExactReal:
    a, b = sys.a, sys.b
    h = Fraction(3, 2)
    if sys.family == "hermite":
        return gamma_half(n + h) / SQRT_PI
    if sys.family == "laguerre":
        return ExactReal(Fraction(4) ** (n + 1)) * gamma_half(n + h) * gamma_half(n + b / 2 + h) / (
            SQRT_PI * gamma_half(b / 2 + Fraction(1, 2))
        )
    return (
        gamma_half(a / 2 + b / 2 + h + n)
        * gamma_half(b / 2 + h + n)
        * gamma_half(a / 2 + h + n)
        * gamma_half(a / 2 + b / 2 + 1)
        * gamma_half(n + h)
        * _pow2(4 * n + 4 + a + b)
        / (
            PI
            * gamma_half(a + b + 4 * n + 5)
            * gamma_half(b / 2 + Fraction(1, 2))
            * gamma_half(a / 2 + Fraction(1, 2))
        )
    )


PI = ExactReal(Fraction(1), 2)


def _pow2(e) -> ExactReal:
    e = frac(e)
    if e.denominator != 1:
        raise ValueError("non-integer power of two")
    return ExactReal(Fraction(2) ** int(e))


def skew_coeffs(sys: OrthoPolySystem, j: int, n: int) -> SkewCoefficients:
    """Exact ``c_j``, ``gamma_j``, ``e1(j, n)``, ``e4(j, n)`` and ``eta1(n)``."""
    return SkewCoefficients(
        c_j=c_coeff(sys, j),
        gamma_j=skew_gamma(sys, j),
        e1=e1_coeff(sys, j, n),
        e4=e4_coeff(sys, j, n),
        eta1=eta1_coeff(sys, n),
    )
