"""Stochastic and brute-force oracles for the eigenvalue jpdf.

Matrix models (public weights, see :class:`~rmtmoments.ensembles.EnsembleSpec`):

* Gaussian: symmetric / hermitian / quaternion self-dual matrices with
  density ``exp(-beta/2 tr H**2)`` (quaternion matrices through their
  ``2n x 2n`` complex form, each eigenvalue kept once);
* Laguerre: ``X^* X`` with ``X`` an ``(n + b) x n`` real, complex or
  quaternion Gaussian matrix, for integer ``b >= 0``;
* Jacobi: ``W1 (W1 + W2)**-1`` for two such Wishart matrices with ``n + b``
  and ``n + a`` rows, for integer ``a, b >= 0``.

Other parameters fall back to a Metropolis sampler of the jpdf itself.
Each stream owns a child of ``SeedSequence(seed)``; estimates depend only on
``(seed, streams, samples)``, whatever the thread count.
"""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import mpmath
import numpy as np
from scipy import integrate

from ._quad import edge_exponent
from .ensembles import EnsembleSpec
from .errors import DivergentMoment, QuadratureFailure, UnrealizableParameters
from .exactnum import HighPrecisionFloat

__all__ = [
    "SamplerConfig",
    "SpectrumSample",
    "MCEstimate",
    "sample_spectrum",
    "sample_block",
    "mc_moment",
    "bruteforce_jpdf_moment",
    "moment_diverges",
]


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling plan: ``streams`` independent streams of ``samples`` spectra each."""

    ensemble: EnsembleSpec
    seed: int = 0
    streams: int = 4
    samples: int = 25_000
    force_metropolis: bool = False

    def __post_init__(self):
        if self.streams < 1 or self.samples < 1:
            raise ValueError("streams and samples must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.ensemble.n.denominator != 1:
            raise ValueError("sampling needs an integer dimension")

    @property
    def total(self) -> int:
        return self.streams * self.samples


@dataclass(frozen=True)
class SpectrumSample:
    eigenvalues: np.ndarray
    stream: int


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with ``std_error = sigma / sqrt(samples)``."""

    mean: float
    std_error: float
    samples: int
    metropolis: bool = False
    autocorrelation: Optional[float] = None

    def within(self, value: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - value) <= sigmas * self.std_error + 1e-12 * max(1.0, abs(value))


# ---------------------------------------------------------------------------
# matrix models


def _realizable(ens: EnsembleSpec) -> bool:
    if ens.family == "gaussian":
        return True
    ok = lambda p: p.denominator == 1 and p >= 0
    if ens.family == "laguerre":
        return ok(ens.b)
    return ok(ens.a) and ok(ens.b)


def _gauss(rng, shape, beta: int, var: float):
    """Real, complex or quaternion (as ``2x`` complex blocks) Gaussian entries with ``E|z|**2 = var``."""
    if beta == 1:
        return rng.normal(0.0, np.sqrt(var), shape)
    if beta == 2:
        s = np.sqrt(var / 2)
        return rng.normal(0.0, s, shape) + 1j * rng.normal(0.0, s, shape)
    s = np.sqrt(var / 4)
    a = rng.normal(0.0, s, shape) + 1j * rng.normal(0.0, s, shape)
    b = rng.normal(0.0, s, shape) + 1j * rng.normal(0.0, s, shape)
    top = np.concatenate([a, b], axis=-1)
    bot = np.concatenate([-b.conj(), a.conj()], axis=-1)
    return np.concatenate([top, bot], axis=-2)


def _distinct(ev: np.ndarray, beta: int) -> np.ndarray:
    # quaternion spectra come in Kramers pairs; keep one of each
    return ev[..., ::2] if beta == 4 else ev


def _gaussian_block(rng, beta: int, n: int, size: int) -> np.ndarray:
    # (X + X^*)/2 with E|x|^2 = 1 has density exp(-beta/2 sum x_j^2) on distinct eigenvalues
    x = _gauss(rng, (size, n, n), beta, 1.0)
    h = (x + np.conj(np.swapaxes(x, -1, -2))) / 2
    return _distinct(np.linalg.eigvalsh(h), beta)


def _wishart(rng, beta: int, rows: int, n: int, size: int) -> np.ndarray:
    # E|x_ij|^2 = 1 gives the weight exp(-beta x / 2) for all three classes
    x = _gauss(rng, (size, rows, n), beta, 1.0)
    return np.conj(np.swapaxes(x, -1, -2)) @ x


def _laguerre_block(rng, beta: int, n: int, b: int, size: int) -> np.ndarray:
    return _distinct(np.linalg.eigvalsh(_wishart(rng, beta, n + b, n, size)), beta)


def _jacobi_block(rng, beta: int, n: int, a: int, b: int, size: int) -> np.ndarray:
    w1 = _wishart(rng, beta, n + b, n, size)
    w2 = _wishart(rng, beta, n + a, n, size)
    chol = np.linalg.cholesky(w1 + w2)
    y = np.linalg.solve(chol, w1)
    z = np.linalg.solve(chol, np.conj(np.swapaxes(y, -1, -2)))
    z = (z + np.conj(np.swapaxes(z, -1, -2))) / 2
    return np.clip(_distinct(np.linalg.eigvalsh(z), beta), 0.0, 1.0)


def _matrix_block(rng, ens: EnsembleSpec, size: int) -> np.ndarray:
    n, beta = int(ens.n), ens.beta
    if ens.family == "gaussian":
        return _gaussian_block(rng, beta, n, size)
    if ens.family == "laguerre":
        return _laguerre_block(rng, beta, n, int(ens.b), size)
    return _jacobi_block(rng, beta, n, int(ens.a), int(ens.b), size)


# ---------------------------------------------------------------------------
# Metropolis


def _log_target(ens: EnsembleSpec, x: np.ndarray) -> np.ndarray:
    """``sum log w(x_j) + beta sum_{i<j} log|x_i - x_j|`` over the last axis."""
    lw = np.sum(ens.log_weight(x), axis=-1)
    i, j = np.triu_indices(x.shape[-1], 1)
    with np.errstate(divide="ignore"):
        lv = ens.beta * np.sum(np.log(np.abs(x[..., i] - x[..., j])), axis=-1)
    return lw + lv


def _initial_points(rng, ens: EnsembleSpec, chains: int) -> np.ndarray:
    n = int(ens.n)
    if ens.family == "gaussian":
        base = np.linspace(-1.0, 1.0, n) * np.sqrt(n)
    elif ens.family == "laguerre":
        base = np.linspace(1.0, 4.0 * n, n) + float(ens.b)
    else:
        base = (np.arange(n) + 0.5) / n
    return base + 0.01 * rng.standard_normal((chains, n)) * (0.1 if ens.family == "jacobi" else 1.0)


def _sweep(rng, ens: EnsembleSpec, x, logp, step):
    n = x.shape[1]
    accepted = np.zeros(x.shape[0])
    for j in range(n):
        prop = x.copy()
        prop[:, j] += step * rng.standard_normal(x.shape[0])
        lp = _log_target(ens, prop)
        ok = np.log(rng.random(x.shape[0])) < lp - logp
        ok &= np.isfinite(lp)
        x[ok] = prop[ok]
        logp[ok] = lp[ok]
        accepted += ok
    return accepted / n


def _autocorrelation_time(series: np.ndarray) -> float:
    """Integrated autocorrelation time of the chain-averaged series (Sokal window)."""
    s = series - series.mean(axis=0)
    var = np.mean(s * s)
    if var == 0:
        return 1.0
    tau = 1.0
    for lag in range(1, s.shape[0] // 2):
        rho = np.mean(s[lag:] * s[:-lag]) / var
        tau += 2 * rho
        if lag >= 5 * tau:
            break
    return max(tau, 1.0)


def _metropolis_block(rng, ens: EnsembleSpec, size: int, chains: int = 500):
    x = _initial_points(rng, ens, chains)
    logp = _log_target(ens, x)
    step = 0.5 if ens.family != "jacobi" else 0.05
    # burn-in with step adaptation toward ~40% acceptance
    for it in range(400):
        acc = np.mean(_sweep(rng, ens, x, logp, step))
        if it < 300:
            step *= np.exp(acc - 0.4)
    pilot = []
    for _ in range(200):
        _sweep(rng, ens, x, logp, step)
        pilot.append(np.sum(x, axis=1))
    tau = _autocorrelation_time(np.array(pilot))
    thin = int(np.ceil(2 * tau))
    per_chain = -(-size // chains)
    out = np.empty((per_chain, chains, x.shape[1]))
    for i in range(per_chain):
        for _ in range(thin):
            _sweep(rng, ens, x, logp, step)
        out[i] = np.sort(x, axis=1)
    return out.reshape(-1, x.shape[1])[:size], tau


# ---------------------------------------------------------------------------
# sampling API


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RMTM_THREADS", "1")))
    except ValueError:
        return 1


def _stream_block(cfg: SamplerConfig, stream: int, seq: np.random.SeedSequence):
    rng = np.random.default_rng(seq)
    if cfg.force_metropolis or not _realizable(cfg.ensemble):
        block, tau = _metropolis_block(rng, cfg.ensemble, cfg.samples)
        return block, tau
    out = []
    left = cfg.samples
    while left > 0:
        size = min(left, 20_000)
        out.append(_matrix_block(rng, cfg.ensemble, size))
        left -= size
    return np.concatenate(out), None


def sample_block(cfg: SamplerConfig) -> tuple[np.ndarray, bool, Optional[float]]:
    """All spectra as an array ``(streams * samples, n)`` in stream order.

    Returns the array, whether the Metropolis path was used, and its largest
    integrated autocorrelation time (``None`` for matrix models).
    """
    metropolis = cfg.force_metropolis or not _realizable(cfg.ensemble)
    if metropolis and not cfg.force_metropolis:
        warnings.warn(
            str(UnrealizableParameters(f"no matrix model for {cfg.ensemble}; using Metropolis")),
            RuntimeWarning,
            stacklevel=2,
        )
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.streams)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        parts = list(pool.map(lambda s: _stream_block(cfg, s, seqs[s]), range(cfg.streams)))
    taus = [t for _, t in parts if t is not None]
    return np.concatenate([p for p, _ in parts]), metropolis, (max(taus) if taus else None)


def sample_spectrum(cfg: SamplerConfig) -> Iterator[SpectrumSample]:
    """Iterate over sampled eigenvalue tuples (ascending), tagged by stream."""
    block, _, _ = sample_block(cfg)
    for i, ev in enumerate(block):
        yield SpectrumSample(np.sort(ev), i // cfg.samples)


def moment_diverges(ens: EnsembleSpec, k) -> bool:
    """Divergence of ``<sum x**k>`` at the origin for Laguerre/Jacobi, as for the closed forms."""
    if ens.family == "gaussian" or k >= 0:
        return False
    p = ens.beta / 2 * (float(ens.b) + 1) - 1
    return k + p <= -1


def mc_moment(cfg: SamplerConfig, k) -> MCEstimate:
    """Monte Carlo ``<sum_j x_j**k>`` with its standard error.

    Raises
    ------
    DivergentMoment
        Under the same condition as the closed-form engines.
    """
    ens = cfg.ensemble
    if moment_diverges(ens, k):
        raise DivergentMoment(f"<sum x**{k}> diverges for {ens}")
    if k == 0:
        return MCEstimate(float(ens.n), 0.0, cfg.total)
    block, metropolis, tau = sample_block(cfg)
    vals = np.sum(np.power(block, k), axis=1)
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / np.sqrt(len(vals)))
    return MCEstimate(mean, se, len(vals), metropolis, tau)


# ---------------------------------------------------------------------------
# cubature of the jpdf over the ordered region


def _ordered_point(ens: EnsembleSpec, u: np.ndarray, m: float):
    """Map box coordinates to ordered eigenvalues ``x_1 < ... < x_n`` and the Jacobian.

    Gaussian/Laguerre use gaps ``x_{i+1} = x_i + u_{i+1}``, with
    ``x_1 = u_1**m`` for Laguerre to cluster nodes at the origin. Jacobi uses
    ``x_{i+1} = x_i + (1 - x_i) s_{i+1}`` with ``s = sin(pi u / 2)**2``,
    which smooths half-integer powers at both ends.
    """
    n = u.shape[1]
    jac = np.ones(u.shape[0])
    if ens.family == "jacobi":
        s = np.sin(np.pi * u / 2) ** 2
        jac *= np.prod(np.pi / 2 * np.sin(np.pi * u), axis=1)
        x = s[:, 0]
        xs = [x]
        for i in range(1, n):
            jac *= 1 - x
            x = x + (1 - x) * s[:, i]
            xs.append(x)
        return np.stack(xs, axis=1), jac
    if ens.family == "laguerre":
        x = u[:, 0] ** m
        jac *= m * u[:, 0] ** (m - 1)
    else:
        x = u[:, 0]
    xs = [x]
    for i in range(1, n):
        x = x + u[:, i]
        xs.append(x)
    return np.stack(xs, axis=1), jac


def bruteforce_jpdf_moment(ens: EnsembleSpec, k, rel_tol: float = 1e-9) -> HighPrecisionFloat:
    """``<sum x**k>`` as a literal ``n``-fold integral over the ordered region, ``n <= 3``.

    The ordered region is mapped onto a box (see :func:`_ordered_point`) and
    the normalization and numerator are integrated together with
    :func:`scipy.integrate.cubature`. A loose first pass over the normalization
    and ``int |numerator|`` fixes the scale of each component, so vanishing
    numerators (odd Gaussian moments) stop on an absolute criterion.

    Raises
    ------
    QuadratureFailure
        If an error estimate stays above ``10 rel_tol`` relative to its scale.
    """
    n = int(ens.n)
    if ens.n.denominator != 1 or not 1 <= n <= 3:
        raise ValueError("brute-force quadrature supports n in {1, 2, 3}")
    if moment_diverges(ens, k):
        raise DivergentMoment(f"<sum x**{k}> diverges for {ens}")
    beta = ens.beta
    k = float(k)
    m = edge_exponent(beta / 2 * (float(ens.b) + 1) - 1) if ens.family == "laguerre" else 1.0
    i, j = np.triu_indices(n, 1)

    def parts(u):
        x, jac = _ordered_point(ens, np.asarray(u), m)
        with np.errstate(all="ignore"):
            v = np.exp(np.sum(ens.log_weight(x), axis=1)) * jac
            v = v * np.prod(np.abs(x[:, j] - x[:, i]) ** beta, axis=1)
            s = np.sum(x**k, axis=1)
        return v, s

    def clean(out):
        return np.where(np.isfinite(out), out, 0.0)

    if ens.family == "jacobi":
        lo, hi = np.zeros(n), np.ones(n)
    elif ens.family == "laguerre":
        lo, hi = np.zeros(n), np.full(n, np.inf)
    else:
        lo, hi = np.r_[-np.inf, np.zeros(n - 1)], np.full(n, np.inf)

    def positive(u):
        v, s = parts(u)
        return clean(np.stack([v, v * np.abs(s)], axis=1))

    rough = integrate.cubature(positive, lo, hi, rtol=1e-3, max_subdivisions=2000)
    scale = rough.estimate
    if not np.all(scale > 0):
        raise QuadratureFailure("normalization integral vanished on the first pass")

    def signed(u):
        v, s = parts(u)
        return clean(np.stack([v, v * s], axis=1) / scale)

    res = integrate.cubature(signed, lo, hi, rtol=rel_tol, atol=rel_tol, max_subdivisions=4000)
    est, err = res.estimate, res.error
    if not np.all(np.isfinite(est)) or np.any(err > 10 * rel_tol):
        raise QuadratureFailure(f"cubature error {err.max():.3g} (relative) above tolerance, status {res.status}")
    value = est[1] * scale[1] / (est[0] * scale[0])
    std = (err[1] * scale[1] + abs(value) * err[0] * scale[0]) / (est[0] * scale[0])
    return HighPrecisionFloat(mpmath.mpf(value), mpmath.mpf(std))
