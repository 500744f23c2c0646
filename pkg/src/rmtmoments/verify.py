"""Verification suites behind ``rmtmoments verify``.

* ``quad``: closed forms vs quadrature of the one-point density, 1e-10 relative;
* ``brute``: closed forms vs the literal ``n``-fold jpdf integral, 1e-8;
* ``mc``: closed forms vs Monte Carlo, 4 standard errors;
* ``duality``: exact identities between independent routes (beta = 1 vs
  beta = 4 corrections, product vs closed skew coefficients, transport
  engine vs displayed formulas).

Each check becomes one output record with ``passed`` set.
"""
from __future__ import annotations

from fractions import Fraction as F

from .ensembles import EnsembleSpec, gaussian, jacobi, laguerre
from .moments import moment

__all__ = ["SUITES", "run_suite"]

QUAD_CASES = [
    (gaussian(2, 3), 4), (laguerre(2, 3, F(1, 2)), -1), (jacobi(2, 4, 1, 2), 3),
    (gaussian(4, 3), 2), (laguerre(4, 2, 1), -1), (jacobi(4, 3, F(1, 2), 0), 3),
    (gaussian(1, 4), 4), (laguerre(1, 4, F(1, 2)), 2), (jacobi(1, 4, F(1, 2), F(3, 2)), 2),
]

BRUTE_CASES = [
    (laguerre(2, 2, F(1, 2)), -1), (jacobi(2, 2, F(1, 2), F(1, 3)), 2), (gaussian(2, 3), 2),
    (laguerre(4, 2, 1), -1), (gaussian(4, 2), 2), (jacobi(4, 3, F(1, 2), 0), 1),
    (laguerre(1, 2, F(1, 2)), 1), (jacobi(1, 2, 1, 1), 2), (gaussian(1, 2), 2),
]

MC_CASES = [
    (gaussian(1, 4), 2), (laguerre(2, 3, 1), 1), (jacobi(4, 2, 0, 1), 2),
    (laguerre(1, 2, F(1, 2)), 1),
]


def _query(ens: EnsembleSpec, k) -> dict:
    return {"family": ens.family, "beta": ens.beta, "n": ens.n, "a": ens.a, "b": ens.b, "k": k}


def _numeric_check(name, ens, k, est, std, rel_tol):
    from .cli import record

    ref = moment(ens, k).exact
    r = float(ref)
    passed = abs(est - r) <= rel_tol * max(abs(r), 1.0)
    rec = record(f"verify:{name}", _query(ens, k), ref)
    rec.update(estimate=repr(float(est)), std_error=repr(float(std)), passed=passed)
    return rec


def suite_quad(**_) -> list:
    from .densities import density, quad_moment

    out = []
    for ens, k in QUAD_CASES:
        q = quad_moment(density(ens), k)
        out.append(_numeric_check("quad", ens, k, float(q.value), float(q.error), 1e-10))
    return out


def suite_brute(**_) -> list:
    from .oracle import bruteforce_jpdf_moment

    out = []
    for ens, k in BRUTE_CASES:
        q = bruteforce_jpdf_moment(ens, k)
        out.append(_numeric_check("brute", ens, k, float(q.value), float(q.error), 1e-8))
    return out


def suite_mc(seed: int = 0, samples: int = 100_000, streams: int = 4, **_) -> list:
    from .cli import record
    from .oracle import SamplerConfig, mc_moment

    out = []
    per_stream = max(1, samples // streams)
    for ens, k in MC_CASES:
        est = mc_moment(SamplerConfig(ens, seed=seed, streams=streams, samples=per_stream), k)
        ref = moment(ens, k).exact
        rec = record("verify:mc", _query(ens, k), ref)
        rec.update(estimate=repr(est.mean), std_error=repr(est.std_error), passed=est.within(float(ref), 4.0))
        out.append(rec)
    return out


def _exact_check(name: str, query: dict, lhs, rhs) -> dict:
    from .cli import record

    rec = record(f"verify:duality:{name}", query, lhs)
    rec.update(estimate=str(rhs), passed=lhs == rhs)
    return rec


def suite_duality(**_) -> list:
    from . import orthopoly as op
    from .orthogonal import o_integral_direct
    from .physics import (
        TransportQuery,
        charge_cumulants,
        kappa2_closed,
        kappa3_over_kappa2_closed,
        transmission_moment,
        transmission_moment_display,
    )
    from .symplectic import jse_moment, lse_moment
    from .unitary import jue_moment_exact, lue_moment_exact

    out = []
    a, b = F(3, 2), F(1, 2)
    for n in (2, 4):
        for k in (1, 2, 3):
            # M2(k, n-1) - O(k, n) against the symplectic engine at size (n-1)/2
            lag = lue_moment_exact(k, n - 1, b) - o_integral_direct(op.laguerre(b), k, n)
            jac = jue_moment_exact(k, n - 1, a, b) - o_integral_direct(op.jacobi(a, b), k, n)
            half = F(n - 1, 2)
            out.append(_exact_check("laguerre", {"beta": 1, "n": n, "b": b, "k": k},
                                    lag, F(2) ** (1 + k) * lse_moment(k, half, b / 2).exact))
            out.append(_exact_check("jacobi", {"beta": 1, "n": n, "a": a, "b": b, "k": k},
                                    jac, 2 * jse_moment(k, half, a / 2, b / 2).exact))
    for sys, label in ((op.laguerre(1), "e-laguerre"), (op.jacobi(1, 2), "e-jacobi")):
        for n in (2, 3):
            for j in range(n):
                out.append(_exact_check(label + "4", {"n": n, "k": j}, op.e4_coeff(sys, j, n), op.e4_closed(sys, j, n)))
                out.append(_exact_check(label + "1", {"n": n, "k": j}, op.e1_coeff(sys, j, n), op.e1_closed(sys, j, n)))
    for beta, n, m in ((2, 2, 3), (4, 2, 2), (1, 2, 4)):
        for delta in (0, 2):
            for k in (1, 2, 3):
                q = TransportQuery(beta, n, m, k, delta)
                out.append(_exact_check("transmission", {"beta": beta, "n": n, "m": m, "delta": delta, "k": k},
                                        transmission_moment(q).exact, transmission_moment_display(q)))
            series = charge_cumulants(TransportQuery(beta, n, m, 1, delta), 3)
            query = {"beta": beta, "n": n, "m": m, "delta": delta}
            out.append(_exact_check("kappa2", dict(query, order=2), series[2], kappa2_closed(beta, delta, m, n)))
            out.append(_exact_check("kappa3/kappa2", dict(query, order=3),
                                    series[3] / series[2], kappa3_over_kappa2_closed(beta, delta, m, n)))
    return out


SUITES = {"duality": suite_duality, "quad": suite_quad, "brute": suite_brute, "mc": suite_mc}


def run_suite(name: str, seed: int = 0, samples: int = 100_000) -> list:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        out.extend(SUITES[s](seed=seed, samples=samples))
    return out
