"""Mean eigenvalue densities and their moments by quadrature.

The unitary density is the two-polynomial Christoffel-Darboux form. The
symplectic and orthogonal densities are the skew-orthogonal representations
built from the same monic polynomials:

    rho4~(x) = rho2(x; 2n)/2 - gamma_{2n-1}/2 w2 p_{2n} sum_j e4(j, n-1) p_{2j}
    rho1~(x) = rho2(x; n-1) - gamma_{n-2} w2 p_{n-1} sum_j e1(j, n/2-2) p_{2j+1}
               + gamma_{n-2} w1 p_{n-1} eta1(n/2-2) eps[w1](x)

Here ``w2`` is the unitary weight of the polynomial system, ``w1`` the
orthogonal weight and ``eps[f](x) = 1/2 int sgn(x-t) f(t) dt``. The
symplectic densities live in the convention ``w2 * f`` (``f = 1, x, x(1-x)``);
:class:`DensityModel` maps them to the public ensemble weights by rescaling
the eigenvalue variable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from scipy.special import betaln, gammaln

from . import _quad
from .ensembles import EnsembleSpec
from .errors import DivergentMoment, OddDimension
from .exactnum import HighPrecisionFloat
from .orthopoly import OrthoPolySystem, e1_coeff, e4_coeff, eta1_coeff, h_gamma

__all__ = [
    "DensityModel",
    "density",
    "density_beta2",
    "density_beta4",
    "density_beta1",
    "rho2",
    "rho2_sum",
    "epsilon_transform",
    "differential_identity",
    "quad_moment",
]

_FAMILY = {"gaussian": "hermite", "laguerre": "laguerre", "jacobi": "jacobi"}

# tail scale of the exponential substitution; w1 decays like exp(-x/2) for Laguerre
_TAIL_SCALE = 4.0


def _norm(sys: OrthoPolySystem, j: int) -> float:
    a, b = float(sys.a), float(sys.b)
    if sys.family == "hermite":
        return float(np.exp(gammaln(j + 1) - j * np.log(2.0)) * np.sqrt(np.pi))
    if sys.family == "laguerre":
        return float(np.exp(gammaln(j + 1) + gammaln(b + j + 1)))
    if j == 0:
        return float(np.exp(betaln(a + 1, b + 1)))
    s = a + b
    return float(
        np.exp(
            gammaln(a + j + 1)
            + gammaln(b + j + 1)
            + gammaln(j + 1)
            + gammaln(s + j + 1)
            - gammaln(s + 2 * j + 1)
            - gammaln(s + 2 * j + 2)
        )
    )


def _skew_gamma(sys: OrthoPolySystem, j: int) -> float:
    return float(h_gamma(sys, j)) / _norm(sys, j)


def _w1(sys: OrthoPolySystem, x):
    """Orthogonal-ensemble weight ``exp(-V1)`` paired with the system."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if sys.family == "hermite":
            return np.exp(-x * x / 2)
        pb = (float(sys.b) - 1) / 2
        if sys.family == "laguerre":
            return np.where(x > 0, np.exp(pb * np.log(x) - x / 2), 0.0)
        pa = (float(sys.a) - 1) / 2
        return np.where((x > 0) & (x < 1), np.exp(pb * np.log(x) + pa * np.log1p(-x)), 0.0)


def _w1_reflected(sys: OrthoPolySystem, d):
    """Jacobi ``w1(1 - d)`` computed from ``d`` (no cancellation near ``x = 1``)."""
    d = np.asarray(d, dtype=float)
    pb, pa = (float(sys.b) - 1) / 2, (float(sys.a) - 1) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where((d > 0) & (d < 1), np.exp(pa * np.log(d) + pb * np.log1p(-d)), 0.0)


def _w2(sys: OrthoPolySystem, x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if sys.family == "hermite":
            return np.exp(-x * x)
        if sys.family == "laguerre":
            return np.where(x > 0, np.exp(float(sys.b) * np.log(x) - x), 0.0)
        return np.where(
            (x > 0) & (x < 1), np.exp(float(sys.b) * np.log(x) + float(sys.a) * np.log1p(-x)), 0.0
        )


def rho2(sys: OrthoPolySystem, n: int, x):
    """Unitary density ``w2 (P_n' P_{n-1} - P_n P_{n-1}') / h_{n-1}``, normalized to ``n``."""
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.zeros_like(x)
    p, dp = sys.evaluate(n, x, derivative=True)
    q, dq = sys.evaluate(n - 1, x, derivative=True)
    return _w2(sys, x) * (dp * q - p * dq) / _norm(sys, n - 1)


def rho2_sum(sys: OrthoPolySystem, n: int, x):
    """The same density as the n-term sum ``w2 sum_j P_j**2 / h_j``."""
    x = np.asarray(x, dtype=float)
    ps = sys.evaluate_upto(max(n - 1, 0), x)
    h = np.array([_norm(sys, j) for j in range(n)])
    return _w2(sys, x) * np.tensordot(1 / h, ps[:n] ** 2, axes=1)


def differential_identity(sys: OrthoPolySystem, n: int, x):
    """Right-hand side ``-D_n w2 P_n P_{n-1}`` of ``d/dx (f rho2) = ...``, with ``D_n = 2 gamma_{n-1}``.

    ``f`` is ``1``, ``x`` and ``x (1 - x)`` for Hermite, Laguerre and Jacobi.
    """
    x = np.asarray(x, dtype=float)
    d = 2 * _skew_gamma(sys, n - 1)
    return -d * _w2(sys, x) * sys.evaluate(n, x) * sys.evaluate(n - 1, x)


# ---------------------------------------------------------------------------
# epsilon transform


_GL30 = np.polynomial.legendre.leggauss(30)


def _panel_integrals(f, start, stop, m):
    """``int_start^stop f`` per point, clustered at ``start`` by ``t = start + (stop-start) u**m``."""
    u, w = _GL30
    u = 0.5 * (u + 1)
    w = 0.5 * w
    m = np.broadcast_to(np.asarray(m, dtype=float), start.shape)[:, None]
    width = (stop - start)[:, None]
    t = start[:, None] + width * u**m
    return np.sum(f(t) * (m * u ** (m - 1) * w) * width, axis=1)


@dataclass(frozen=True)
class EpsilonTransform:
    """``eps[w1](x)`` from cumulative knot masses plus a short per-point panel."""

    sys: OrthoPolySystem
    knots: np.ndarray
    cumulative: np.ndarray  # int from the left end (or from 0 for Hermite) to each knot
    total: float

    @property
    def _m_left(self) -> float:
        return 1.0 if self.sys.family == "hermite" else _quad.edge_exponent(_w1_powers(self.sys)[0])

    @property
    def _m_right(self) -> float:
        return _quad.edge_exponent(_w1_powers(self.sys)[1])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        f = lambda t: _w1(self.sys, t)
        if self.sys.family == "hermite":
            y = np.abs(flat)
            out = self._from_left(f, y)
            return (np.sign(flat) * out).reshape(x.shape)
        if self.sys.family == "laguerre":
            return (self._from_left(f, flat) - self.total / 2).reshape(x.shape)
        left = flat <= 0.5
        out = np.empty_like(flat)
        out[left] = self._from_left(f, flat[left]) - self.total / 2
        out[~left] = self.total / 2 - self._from_right(f, flat[~left])
        return out.reshape(x.shape)

    def _from_left(self, f, y):
        kn = self.knots
        i = np.clip(np.searchsorted(kn, y, side="right") - 1, 0, len(kn) - 1)
        beyond = y >= kn[-1]
        out = self.cumulative[i].copy()
        inside = ~beyond & (y > kn[i])
        if np.any(inside):
            m = np.where(i[inside] == 0, self._m_left, 2.0)
            out[inside] += _panel_integrals(f, kn[i[inside]], y[inside], m)
        out[beyond] = self.cumulative[-1] if self.sys.family == "hermite" else self.total
        return out

    def _from_right(self, f, y):
        # mass to the right of y, for Jacobi only, in the distance d = 1 - y
        kn = 1.0 - self.knots[::-1]
        cum = self.total - self.cumulative[::-1]
        d = 1.0 - y
        g = lambda t: _w1_reflected(self.sys, t)
        i = np.clip(np.searchsorted(kn, d, side="right") - 1, 0, len(kn) - 1)
        out = cum[i].copy()
        inside = d > kn[i]
        if np.any(inside):
            m = np.where(i[inside] == 0, self._m_right, 2.0)
            out[inside] += _panel_integrals(g, kn[i[inside]], d[inside], m)
        return out


def _w1_powers(sys: OrthoPolySystem) -> tuple[float, float]:
    return (float(sys.b) - 1) / 2, (float(sys.a) - 1) / 2


def epsilon_transform(sys: OrthoPolySystem) -> EpsilonTransform:
    """Precompute ``eps[w1]`` for the orthogonal weight paired with ``sys``."""
    f = lambda t: _w1(sys, t)
    if sys.family == "jacobi":
        knots = np.linspace(0.0, 1.0, 65)
    else:
        # extend until w1 is negligible relative to its peak
        grid = np.arange(0.0, 4000.0, 0.5)
        w = f(grid)
        peak = np.max(w[np.isfinite(w)])
        last = np.nonzero(w > 1e-30 * peak)[0][-1]
        knots = grid[: last + 2]
    pl, pr = _w1_powers(sys)
    pieces = []
    for lo, hi in zip(knots[:-1], knots[1:]):
        if lo == 0.0 and sys.family != "hermite":
            pieces.append(_quad.integrate_edge(f, lo, hi - lo, pl, abs_tol=1e-14).value)
        elif hi == 1.0 and sys.family == "jacobi":
            g = lambda d: _w1_reflected(sys, d)
            pieces.append(_quad.integrate_edge(g, 0.0, hi - lo, pr, abs_tol=1e-14).value)
        else:
            pieces.append(_quad.integrate(f, lo, hi, abs_tol=1e-14).value)
    cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
    total = float(cumulative[-1])
    if sys.family == "hermite":
        total *= 2
    elif sys.family == "laguerre":
        total += _quad.integrate_tail(f, float(knots[-1]), _TAIL_SCALE, abs_tol=1e-16).value
    return EpsilonTransform(sys, knots, cumulative, total)


# ---------------------------------------------------------------------------
# density models


@dataclass(frozen=True)
class DensityModel:
    """Mean eigenvalue density of one ensemble, normalized to ``n``.

    ``tilde`` evaluates the density in the variable of the polynomial system;
    calling the model evaluates it for the public ensemble weight, whose
    eigenvalues are ``x / scale``.
    """

    ensemble: EnsembleSpec
    beta: int
    system: OrthoPolySystem
    scale: float
    tilde: Callable = field(repr=False)

    @property
    def interval(self) -> tuple[float, float]:
        return self.ensemble.interval

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return self.scale * self.tilde(self.scale * y)

    @property
    def edge_power(self) -> float:
        """Exponent ``p`` with ``rho ~ y**p`` at ``y -> 0`` (Laguerre, Jacobi)."""
        b = float(self.ensemble.b)
        return {2: b, 4: 2 * b + 1, 1: (b - 1) / 2}[self.beta]

    @property
    def right_edge_power(self) -> float:
        """Exponent ``q`` with ``rho ~ (1-y)**q`` at ``y -> 1`` (Jacobi)."""
        a = float(self.ensemble.a)
        return {2: a, 4: 2 * a + 1, 1: (a - 1) / 2}[self.beta]


def _n_int(ens: EnsembleSpec) -> int:
    if ens.n.denominator != 1:
        raise ValueError("densities need an integer dimension")
    return int(ens.n)


def density_beta2(ens: EnsembleSpec) -> DensityModel:
    """Christoffel-Darboux density for ``beta = 2``."""
    if ens.beta != 2:
        raise ValueError("density_beta2 needs a beta = 2 ensemble")
    n = _n_int(ens)
    sys = OrthoPolySystem(_FAMILY[ens.family], ens.a, ens.b)
    return DensityModel(ens, 2, sys, 1.0, lambda x: rho2(sys, n, x))


def density_beta4(ens: EnsembleSpec) -> DensityModel:
    """Symplectic density from the ``e4`` representation.

    Public weights ``x**(2b+1) exp(-2x)``, ``x**(2b+1) (1-x)**(2a+1)`` and
    ``exp(-2 x**2)`` use the systems ``L^{2b}``, ``P^{2a,2b}`` and ``H`` with
    scales 2, 1 and ``sqrt(2)``.
    """
    if ens.beta != 4:
        raise ValueError("density_beta4 needs a beta = 4 ensemble")
    n = _n_int(ens)
    sys = OrthoPolySystem(_FAMILY[ens.family], 2 * ens.a, 2 * ens.b)
    scale = {"gaussian": np.sqrt(2.0), "laguerre": 2.0, "jacobi": 1.0}[ens.family]
    coeffs = np.array([float(e4_coeff(sys, j, n - 1)) for j in range(n)])
    g = _skew_gamma(sys, 2 * n - 1)

    def tilde(x):
        x = np.asarray(x, dtype=float)
        ps = sys.evaluate_upto(2 * n, x)
        corr = np.tensordot(coeffs, ps[0 : 2 * n : 2], axes=1) * ps[2 * n]
        with np.errstate(invalid="ignore"):
            out = 0.5 * rho2(sys, 2 * n, x) - 0.5 * g * _w2(sys, x) * corr
        return out

    return DensityModel(ens, 4, sys, scale, tilde)


def density_beta1(ens: EnsembleSpec) -> DensityModel:
    """Orthogonal density (even ``n``) from the ``e1``/``eta1`` representation.

    Raises
    ------
    OddDimension
        For odd ``n``.
    """
    if ens.beta != 1:
        raise ValueError("density_beta1 needs a beta = 1 ensemble")
    n = _n_int(ens)
    if n % 2:
        raise OddDimension("the orthogonal-ensemble density representation needs even n")
    sys = OrthoPolySystem(_FAMILY[ens.family], ens.a, ens.b)
    h = n // 2
    coeffs = np.array([float(e1_coeff(sys, j, h - 2)) for j in range(h - 1)])
    eta = float(eta1_coeff(sys, h - 2))
    g = _skew_gamma(sys, n - 2)
    eps = epsilon_transform(sys)

    def tilde(x):
        x = np.asarray(x, dtype=float)
        ps = sys.evaluate_upto(n - 1, x)
        odd = np.tensordot(coeffs, ps[1 : n - 2 : 2], axes=1) if len(coeffs) else np.zeros_like(x)
        return (
            rho2(sys, n - 1, x)
            - g * _w2(sys, x) * odd * ps[n - 1]
            + g * _w1(sys, x) * ps[n - 1] * eta * eps(x)
        )

    return DensityModel(ens, 1, sys, 1.0, tilde)


def density(ens: EnsembleSpec) -> DensityModel:
    return {2: density_beta2, 4: density_beta4, 1: density_beta1}[ens.beta](ens)


# ---------------------------------------------------------------------------
# moments


def quad_moment(model: DensityModel, k, abs_tol: float = 1e-11, rel_tol: float = 1e-13) -> HighPrecisionFloat:
    """``int y**k rho(y) dy`` by adaptive Gauss-Legendre quadrature.

    The Gaussian line is split at 0 and each half mapped by
    ``x = -s log(1-t)``; Laguerre uses a panel on ``[0, 1]`` clustered at the
    origin according to the edge power and a mapped tail; Jacobi two
    clustered panels meeting at ``1/2``. The error
    bound is the summed panel estimate, and the tolerance is
    ``max(abs_tol, rel_tol |value|)`` on the integral in the system variable.

    Raises
    ------
    DivergentMoment
        When ``y**k rho(y)`` is not integrable at the origin.
    QuadratureFailure
        When the tolerance is not reached within the panel budget.

    Examples
    --------
    >>> from rmtmoments.ensembles import jacobi
    >>> round(float(quad_moment(density(jacobi(2, 1, 0, 0)), 3).value), 12)
    0.25
    """
    family = model.ensemble.family
    k = float(k)
    if family == "gaussian" and not k.is_integer():
        raise ValueError("Gaussian moments need integer k")
    if family != "gaussian" and k + model.edge_power <= -1:
        raise DivergentMoment(f"y**{k} rho(y) is not integrable at the origin")
    kw = {"abs_tol": abs_tol, "rel_tol": rel_tol}
    rho = model.tilde

    def f(x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            y = np.power(x, k) * rho(x)
        return np.where(np.isfinite(y), y, 0.0)

    if family == "gaussian":
        s = max(1.0, np.sqrt(float(model.ensemble.n)))
        res = _quad.combine(
            _quad.integrate_tail(f, 0.0, s, **kw),
            _quad.integrate_tail(lambda x: f(-x), 0.0, s, **kw),
        )
    elif family == "laguerre":
        res = _quad.combine(
            _quad.integrate_edge(f, 0.0, 1.0, model.edge_power + k, **kw),
            _quad.integrate_tail(f, 1.0, _TAIL_SCALE, **kw),
        )
    else:
        res = _quad.combine(
            _quad.integrate_edge(f, 0.0, 0.5, model.edge_power + k, **kw),
            _quad.integrate_edge(f, 1.0, -0.5, model.right_edge_power, **kw),
        )
    factor = model.scale ** (-k)
    return HighPrecisionFloat(mpmath.mpf(res.value * factor), mpmath.mpf(res.error * factor))
