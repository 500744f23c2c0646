"""Globally adaptive Gauss-Legendre quadrature.

Each panel is integrated with a 20-point and a 41-point Gauss-Legendre rule;
their difference is the panel error estimate. The panel with the largest
estimate is bisected until the total estimate meets the tolerance.
Semi-infinite ranges are mapped onto ``[0, 1)`` by ``x = c - s log(1 - t)``;
panels next to a finite endpoint with a known power behaviour
``|x - edge|**p`` are clustered with ``x = edge + width t**m`` (see
:func:`edge_exponent`).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import QuadratureFailure

_LO = np.polynomial.legendre.leggauss(20)
_HI = np.polynomial.legendre.leggauss(41)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    panels: int


def _panel(f, a: float, b: float):
    h = 0.5 * (b - a)
    m = 0.5 * (b + a)
    xl, wl = _LO
    xh, wh = _HI
    x = np.concatenate([m + h * xl, m + h * xh])
    y = f(x)
    lo = h * np.dot(wl, y[: len(xl)])
    hi = h * np.dot(wh, y[len(xl):])
    return hi, abs(hi - lo)


def integrate(f, a: float, b: float, abs_tol: float = 1e-11, rel_tol: float = 1e-13, max_panels: int = 4000) -> QuadResult:
    """Integrate a vectorized ``f`` over the finite interval ``[a, b]``.

    Stops when the summed error estimate is below ``max(abs_tol, rel_tol |I|)``.

    Raises
    ------
    QuadratureFailure
        If the panel budget is exhausted first.
    """
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    v, e = _panel(f, a, b)
    heap = [(-e, a, b, v)]
    total, err = v, e
    panels = 1
    while err > max(abs_tol, rel_tol * abs(total)):
        if panels >= max_panels:
            raise QuadratureFailure(f"error estimate {err:.3g} above tolerance after {panels} panels")
        ne, pa, pb, pv = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if not (pa < mid < pb):
            raise QuadratureFailure("panel width below floating point resolution")
        v1, e1 = _panel(f, pa, mid)
        v2, e2 = _panel(f, mid, pb)
        total += v1 + v2 - pv
        err += e1 + e2 + ne
        heapq.heappush(heap, (-e1, pa, mid, v1))
        heapq.heappush(heap, (-e2, mid, pb, v2))
        panels += 1
    # re-sum to shed accumulated rounding from the running updates
    total = float(np.sum([p[3] for p in heap]))
    err = float(np.sum([-p[0] for p in heap]))
    return QuadResult(total, err, panels)


def integrate_tail(f, c: float, scale: float = 1.0, **kw) -> QuadResult:
    """``int_c^inf f`` through ``x = c - scale log(1 - t)``."""

    def g(t):
        u = 1.0 - t
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            y = f(c - scale * np.log(u)) * (scale / u)
        return np.where(np.isfinite(y), y, 0.0)

    return integrate(g, 0.0, 1.0, **kw)


def edge_exponent(power: float) -> float:
    """Clustering exponent ``m`` for an endpoint behaviour ``|x - edge|**power``.

    A rational power ``p/q`` (``q <= 64``) gets ``m = q``: every term
    ``|x - edge|**(j + p/q)`` then becomes a polynomial in ``t``. Other powers
    in ``(-1, 0)`` get ``m = 1 / (power + 1)``, which removes the leading
    singularity only.
    """
    r = Fraction(float(power)).limit_denominator(64)
    if abs(float(r) - power) < 1e-12:
        return float(r.denominator)
    if -1 < power < 0:
        return 1.0 / (power + 1)
    return 1.0


def integrate_edge(f, edge: float, width: float, power: float = -0.5, **kw) -> QuadResult:
    """``int`` of ``f`` over the panel of length ``|width|`` starting at ``edge``.

    ``f`` behaves like ``|x - edge|**power`` near ``edge``; the substitution
    ``x = edge + width t**m`` with ``m = edge_exponent(power)`` removes the
    leading singularity. ``width`` may be negative (panel left of ``edge``).
    """
    m = edge_exponent(power)

    def g(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            y = f(edge + width * t**m) * (m * abs(width) * t ** (m - 1))
        return np.where(np.isfinite(y), y, 0.0)

    return integrate(g, 0.0, 1.0, **kw)


def combine(*parts: QuadResult) -> QuadResult:
    return QuadResult(sum(p.value for p in parts), sum(p.error for p in parts), sum(p.panels for p in parts))
