"""Transport observables of chaotic cavities built on the ensemble moments.

* transmission eigenvalues: ``<T_k> = M_J(k, n)`` for the Jacobi ensemble with
  ``a = (2/beta)(1 + delta/2) - 1`` and ``b = m - n``;
* proper delay times: ``<D_k> = n**(k-1) M_L(-k, n)`` for the Laguerre
  ensemble with ``b = n - 1 + 2/beta``, finite for ``k < n beta/2 + 1``;
* charge cumulants from the generating function
  ``sum_j x**j/j! kappa_j = -sum_k (-1)**k/k <T_k> (exp(x) - 1)**k``;
* the ``n -> infinity`` limits of both moment families.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .ensembles import MomentResult
from .errors import OddDimension
from ._series import EpsSeries, finite_part, gpoch
from .exactnum import ExactReal, binom_gen, frac, gamma_half, poch, rgamma_half
from .orthogonal import _phi_jacobi, joe_moment, loe_moment
from .symplectic import jse_moment, lse_moment
from .unitary import jue_moment, lue_moment

__all__ = [
    "TransportQuery",
    "DelayQuery",
    "CumulantSeries",
    "jacobi_parameters",
    "transmission_moment",
    "transmission_moment_display",
    "delay_moment",
    "charge_cumulants",
    "kappa2_closed",
    "kappa3_over_kappa2_closed",
    "limit_catalan",
    "schroeder_series",
    "delay_limit",
]


@dataclass(frozen=True)
class TransportQuery:
    """Cavity with ``m >= n`` channels in the two leads; ``delta = 0`` for Dyson ensembles."""

    beta: int
    n: int
    m: int
    k: int = 1
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError("beta must be 1, 2 or 4")
        if int(self.n) != self.n or int(self.m) != self.m or self.n < 1:
            raise ValueError("channel counts must be positive integers")
        if self.m < self.n:
            raise ValueError("the convention m >= n is required")
        if int(self.k) != self.k or self.k < 0:
            raise ValueError("k must be a nonnegative integer")
        d = frac(self.delta)
        if (2 * d).denominator != 1:
            raise ValueError("delta must be an integer or half-integer")
        object.__setattr__(self, "delta", d)
        if self.beta == 1 and self.n % 2:
            raise OddDimension("beta = 1 transport requires an even number n of channels")


@dataclass(frozen=True)
class DelayQuery:
    """Moment of order ``k`` of the proper delay times with ``tau_H = n``."""

    beta: int
    n: int
    k: int

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError("beta must be 1, 2 or 4")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.beta == 1 and self.n % 2:
            raise OddDimension("beta = 1 delay times require even n")


@dataclass(frozen=True)
class CumulantSeries:
    """``kappas[j-1]`` is the ``j``-th charge cumulant."""

    kappas: tuple = field(default_factory=tuple)

    def __getitem__(self, j: int) -> ExactReal:
        return self.kappas[j - 1]

    def __len__(self):
        return len(self.kappas)


def jacobi_parameters(beta: int, delta, m: int, n: int) -> tuple[Fraction, Fraction]:
    """``(a, b)`` of the Jacobi ensemble that carries the transmission eigenvalues."""
    a = Fraction(2, beta) * (1 + frac(delta) / 2) - 1
    return a, Fraction(m - n)


def transmission_moment(q: TransportQuery) -> MomentResult:
    """``<tr (t t^dagger)**k>``.

    Examples
    --------
    >>> transmission_moment(TransportQuery(2, 1, 2, 1)).exact
    ExactReal(2/3)
    """
    a, b = jacobi_parameters(q.beta, q.delta, q.m, q.n)
    if q.beta == 2:
        return jue_moment(q.k, q.n, a, b)
    if q.beta == 4:
        return jse_moment(q.k, q.n, a, b)
    return joe_moment(q.k, q.n, a, b)


# ---------------------------------------------------------------------------
# the same moments written directly in (delta, m, n)


def _t2_display(k: int, n, m, delta) -> Fraction:
    d2 = delta / 2
    total = Fraction(n * m) / (d2 + n + m)
    for j in range(1, k):
        inner = Fraction(0)
        for i in range(1, min(j, int(n)) + 1):
            u = (
                (d2 + m + n - 2 * i + j + 1)
                * gpoch(d2 + m, j - i + 1)
                * gpoch(m, j - i + 1)
                / (
                    gpoch(d2 + m + n - i, j + 2)
                    * gpoch(d2 + m + n - i + 1, j)
                    * gpoch(d2 + n + 1, -i)
                    * gpoch(n + 1, -i)
                )
            )
            inner += comb(j, i) * comb(j, i - 1) * u
        total -= inner / j
    return total


def _t4_display(k: int, n, m, delta) -> Fraction:
    d2, d4 = delta / 2, delta / 4
    main = _t2_display(k, 2 * n, 2 * m, delta - 2) / 2 if k else Fraction(2 * n) / 2
    corr = Fraction(0)
    for j in range(1, min(int(n), k // 2) + 1):
        for i in range(0, min(k - 2 * j, int(2 * n) - 2 * j) + 1):
            num = (
                Fraction(2) ** (4 * j - 3)
                * gpoch(d2 + 2 * n - i - 2 * j, i)
                * gpoch(2 * m, k - i - 2 * j + 1)
                * gpoch(d2 + 2 * m - 1, k - i - 2 * j + 1)
                * (d2 + 2 * m + 2 * n - 4 * j)
                * (d2 + 2 * m + 2 * n - 2 * i - 4 * j + k)
            )
            den = (
                gpoch(d4 + n + Fraction(1, 2), -j)
                * gpoch(m, 1 - j)
                * gpoch(d4 + m - Fraction(1, 2), 1 - j)
                * gpoch(2 * n - 2 * j + 1, -i)
                * gpoch(n + 1, -j)
                * gpoch(d2 + 2 * m + 2 * n - i - 2 * j, 1 + k)
                * gpoch(d2 + 2 * m + 2 * n - i - 4 * j, 1 + k)
            )
            corr += comb(k, i) * comb(k, i + 2 * j) * num / den
    return main - corr


def _regulated(f, k, n, m, delta) -> Fraction:
    # cancelling poles (e.g. delta = 0 at beta = 4): shift delta and take the finite part
    try:
        return f(k, n, m, delta)
    except ZeroDivisionError:
        return finite_part(f(k, n, m, delta + EpsSeries.eps()))


def _t1_display(k: int, n: int, m: int, delta) -> Fraction:
    main = 2 * _regulated(_t4_display, k, Fraction(n - 1, 2), Fraction(m - 1, 2), 2 * delta + 4)
    inc = Fraction(0)
    for j in range(0, min(n // 2 - 1, k) + 1):
        num = (
            Fraction(4) ** k
            * (delta + m + n - 4 * j + 2 * k)
            * poch((delta + m + 1) / 2, k - j).rational
            * poch(Fraction(m, 2), k - j).rational
        )
        den = (
            poch(delta + m + n - 2 * j, 2 * k + 1).rational
            * poch((delta + n + 2) / 2, -j).rational
            * poch(Fraction(1 + n, 2), -j).rational
        )
        inc += comb(2 * k, 2 * j) * num / den
    if Fraction(delta).denominator != 1:
        # Gamma form needs half-integer arguments (integer delta); else the Pochhammer form
        return main + inc + _phi_jacobi(k, n, 1 + Fraction(delta), Fraction(m - n))
    phi = ExactReal(0)
    for j in range(1, k + 1):
        r = rgamma_half(j + k + 1 - n)
        if r.is_zero:
            continue
        phi = phi + (
            ExactReal(Fraction(2) ** int(delta + 2))
            * gamma_half((delta + m - n + 2 * j + 1) / 2)
            * gamma_half((delta + m + 2) / 2)
            * gamma_half((delta + n + 2) / 2)
            * gamma_half(m - n + k + j)
            * gamma_half(j + k)
            * r
            / (
                gamma_half(delta + 1 + m + j + k)
                * gamma_half(Fraction(m - n + 1 + 2 * j, 2))
                * gamma_half(Fraction(m, 2))
                * gamma_half(delta / 2 + 1)
                * gamma_half(Fraction(n, 2))
            )
        )
    return main + inc + phi.rational


def transmission_moment_display(q: TransportQuery) -> ExactReal:
    """Transmission moment from the closed forms stated in physical parameters.

    Independent of :func:`transmission_moment`, which goes through the generic
    Jacobi engines; the two agree exactly. The ``beta = 1`` remainder uses
    ``Gamma`` at half-integer points and needs integer ``delta``.
    """
    k, n, m, d = int(q.k), q.n, q.m, q.delta
    if k == 0:
        return ExactReal(n)
    if q.beta == 1:
        return ExactReal(_t1_display(k, n, m, d))
    f = _t2_display if q.beta == 2 else _t4_display
    return ExactReal(_regulated(f, k, Fraction(n), Fraction(m), d))


# ---------------------------------------------------------------------------
# delay times


def delay_moment(q: DelayQuery) -> MomentResult:
    """``<D_k> = (1/n) <tr Q**k>`` with Heisenberg time ``n``.

    Diverges (``convergent=False``) for ``k >= n beta/2 + 1``.

    Examples
    --------
    >>> delay_moment(DelayQuery(2, 3, 1)).exact
    ExactReal(1)
    """
    n, k = q.n, q.k
    if k >= Fraction(n * q.beta, 2) + 1:
        return MomentResult.divergent()
    b = Fraction(n - 1) + Fraction(2, q.beta)
    if q.beta == 2:
        r = lue_moment(-k, n, b)
    elif q.beta == 4:
        r = lse_moment(-k, n, b)
    else:
        r = loe_moment(-k, n, b)
    if not r.convergent:
        return r
    return MomentResult(ExactReal(Fraction(n) ** (k - 1)) * r.exact, True, r.terms_summed)


# ---------------------------------------------------------------------------
# cumulants


def _series_mul(p: list, q: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(p):
        if x == 0:
            continue
        for j in range(0, order + 1 - i):
            out[i + j] += x * q[j]
    return out


def charge_cumulants(q: TransportQuery, order: int) -> CumulantSeries:
    """First ``order`` charge cumulants by exact power-series composition.

    ``q.k`` is ignored; the moments ``<T_1> .. <T_order>`` are computed.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    moments = []
    for k in range(1, order + 1):
        r = transmission_moment(TransportQuery(q.beta, q.n, q.m, k, q.delta))
        moments.append(r.exact.rational)
    # e^x - 1 truncated
    u = [Fraction(0)] + [Fraction(1, factorial(i)) for i in range(1, order + 1)]
    power = [Fraction(1)] + [Fraction(0)] * order
    gen = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        power = _series_mul(power, u, order)
        coef = -Fraction((-1) ** k, k) * moments[k - 1]
        for i in range(order + 1):
            gen[i] += coef * power[i]
    return CumulantSeries(tuple(ExactReal(factorial(j) * gen[j]) for j in range(1, order + 1)))


def kappa2_closed(beta: int, delta, m: int, n: int) -> ExactReal:
    """Closed form of the shot-noise variance ``kappa_2``."""
    c = (2 + frac(delta)) / beta
    e = (4 + frac(delta)) / beta
    return ExactReal(
        n * m * (c - 1 + n) * (c - 1 + m) / ((e - 1 + n + m) * (c - 2 + n + m) * (c - 1 + n + m))
    )


def kappa3_over_kappa2_closed(beta: int, delta, m: int, n: int) -> ExactReal:
    """Closed form of ``kappa_3 / kappa_2``."""
    def ratio(d):
        c = (2 + d) / beta
        g = (6 + d) / beta
        return -(n - m - c + 1) * (n - m + c - 1) / ((n + m + c - 3) * (n + m + g - 1))

    try:
        return ExactReal(ratio(frac(delta)))
    except ZeroDivisionError:
        # removable 0/0 (e.g. beta=2, delta=0, m=n=1): take the limit in delta
        return ExactReal(finite_part(ratio(frac(delta) + EpsSeries.eps())))


# ---------------------------------------------------------------------------
# n -> infinity


def _catalan(j: int) -> int:
    return comb(2 * j, j) // (j + 1)


def limit_catalan(k: int, m_over_n=Fraction(1)) -> ExactReal:
    """``lim <T_k>/n`` at fixed ratio ``m/n``: ``(1 + r) sum_j binom(k-1, j) C_j (-1)**j xi**(j+1)``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    r = frac(m_over_n)
    xi = r / (1 + r) ** 2
    total = sum(comb(k - 1, j) * _catalan(j) * (-1) ** j * xi ** (j + 1) for j in range(k))
    return ExactReal((1 + r) * total)


def schroeder_series(k: int) -> ExactReal:
    """``(1/k) sum_j binom(k, j) binom(k, j-1) 2**j``: 2, 6, 22, 90, ... for k = 1, 2, ...

    This is the large Schroeder number of index ``k``; the delay-time moments
    approach the same sequence shifted by one, see :func:`delay_limit`.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    return ExactReal(sum(binom_gen(k, j).rational * binom_gen(k, j - 1).rational * 2**j for j in range(k + 1)) / k)


def delay_limit(k: int) -> ExactReal:
    """``lim_{n -> inf} <D_k>``: 1, 2, 6, 22, 90, ... (large Schroeder number of index ``k-1``)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return ExactReal(1) if k == 1 else schroeder_series(k - 1)
