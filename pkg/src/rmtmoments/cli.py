"""Command-line front end: ``rmtmoments <command> ...`` (or ``python -m rmtmoments``).

Every command prints records, as JSON (one object, or an array when there
are several) or as CSV with the fixed header::

    quantity,family,beta,n,a,b,m,delta,k,order,value_rational,pi_half_power,
    value_float,diverges,estimate,std_error,passed

``value_rational`` is ``"p/q"`` (the value is ``p/q * pi**(pi_half_power/2)``)
and is empty when the value is only known numerically; ``value_float`` has
17 significant digits. ``estimate``/``std_error``/``passed`` are filled by
``verify``.

Exit codes: 0 success, 2 divergent moment, 3 invalid parameters or usage,
4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional

import mpmath

from .ensembles import EnsembleSpec, MomentResult
from .errors import DivergentMoment, NonExactArgument, PoleError
from .exactnum import ExactReal, HighPrecisionFloat, to_float

__all__ = ["main", "run", "COLUMNS"]

COLUMNS = (
    "quantity", "family", "beta", "n", "a", "b", "m", "delta", "k", "order",
    "value_rational", "pi_half_power", "value_float", "diverges",
    "estimate", "std_error", "passed",
)

EXIT_OK, EXIT_DIVERGENT, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _order(text: str):
    r = _rational(text)
    return int(r) if r.denominator == 1 else r


def _fmt_float(x) -> str:
    return mpmath.nstr(mpmath.mpf(x), 17, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) if x != 0 else "0"


def _value_fields(value) -> dict:
    if value is None:
        return {"value_rational": None, "pi_half_power": None, "value_float": None, "diverges": True}
    if isinstance(value, ExactReal):
        r = value.rational
        return {
            "value_rational": f"{r.numerator}/{r.denominator}",
            "pi_half_power": value.pi_half_exp,
            "value_float": _fmt_float(to_float(value, 17).value),
            "diverges": False,
        }
    if isinstance(value, HighPrecisionFloat):
        return {"value_rational": None, "pi_half_power": 0, "value_float": _fmt_float(value.value), "diverges": False}
    return {"value_rational": None, "pi_half_power": 0, "value_float": _fmt_float(value), "diverges": False}


def record(quantity: str, query: dict, value) -> dict:
    """Output record: query echo plus value fields (``value`` None means divergent)."""
    out = {"quantity": quantity}
    out.update({k: (str(v) if isinstance(v, Fraction) else v) for k, v in query.items()})
    out.update(_value_fields(value))
    return out


def parse_record(rec: dict) -> Optional[ExactReal]:
    """Inverse of :func:`record` for exact values."""
    if rec.get("value_rational") is None:
        return None
    return ExactReal(Fraction(rec["value_rational"]), int(rec["pi_half_power"]))


def _emit(records: list, fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.DictWriter(out, fieldnames=COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: ("" if r.get(k) is None else str(r.get(k)).lower() if isinstance(r.get(k), bool) else r.get(k))
                        for k in COLUMNS})
    else:
        json.dump(records[0] if len(records) == 1 else records, out, indent=2)
        out.write("\n")


# ---------------------------------------------------------------------------
# commands


def _result_value(res: MomentResult):
    return res.value if res.convergent else None


def _cmd_moment(args) -> list:
    from .moments import moment

    ens = EnsembleSpec(args.ensemble, args.beta, args.n, args.a, args.b)
    query = {"family": ens.family, "beta": ens.beta, "n": args.n, "k": args.k}
    if ens.family != "gaussian":
        query["b"] = ens.b
    if ens.family == "jacobi":
        query["a"] = ens.a
    return [record("moment", query, _result_value(moment(ens, args.k)))]


def _cmd_transmission(args) -> list:
    from .physics import TransportQuery, transmission_moment

    q = TransportQuery(args.beta, args.n, args.m, args.k, args.delta)
    query = {"beta": q.beta, "n": q.n, "m": q.m, "delta": q.delta, "k": q.k}
    return [record("transmission", query, _result_value(transmission_moment(q)))]


def _cmd_delay(args) -> list:
    from .physics import DelayQuery, delay_moment

    q = DelayQuery(args.beta, args.n, args.k)
    return [record("delay", {"beta": q.beta, "n": q.n, "k": q.k}, _result_value(delay_moment(q)))]


def _cmd_cumulants(args) -> list:
    from .physics import TransportQuery, charge_cumulants

    if args.order < 1:
        raise ValueError("order must be a positive integer")
    q = TransportQuery(args.beta, args.n, args.m, 1, args.delta)
    series = charge_cumulants(q, args.order)
    query = {"beta": q.beta, "n": q.n, "m": q.m, "delta": q.delta}
    return [record("cumulant", dict(query, order=j), series[j]) for j in range(1, len(series) + 1)]


def _cmd_limit(args) -> list:
    from .physics import delay_limit, limit_catalan

    if args.kind == "catalan":
        return [record("limit_catalan", {"k": args.k, "m": args.ratio}, limit_catalan(args.k, args.ratio))]
    return [record("limit_delay", {"k": args.k}, delay_limit(args.k))]


def _cmd_verify(args) -> list:
    from .verify import run_suite

    return run_suite(args.suite, seed=args.seed, samples=args.samples)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="rmtmoments",
        description="Exact finite-n moments of Gaussian, Laguerre and Jacobi ensembles (beta = 1, 2, 4).",
        epilog="CSV columns: " + ",".join(COLUMNS),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        return sp

    beta = {"type": int, "choices": (1, 2, 4), "required": True}

    s = common(sub.add_parser("moment", help="<sum_j x_j**k> of an ensemble"))
    s.add_argument("--ensemble", choices=("gaussian", "laguerre", "jacobi"), required=True)
    s.add_argument("--beta", **beta)
    s.add_argument("--a", type=_rational, default=Fraction(0))
    s.add_argument("--b", type=_rational, default=Fraction(0))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=_order, required=True)
    s.set_defaults(func=_cmd_moment)

    s = common(sub.add_parser("transmission", help="<sum_j T_j**k> for an m x n cavity"))
    s.add_argument("--beta", **beta)
    s.add_argument("--delta", type=_rational, default=Fraction(0))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=_cmd_transmission)

    s = common(sub.add_parser("delay", help="moment of the proper delay times (tau_H = n)"))
    s.add_argument("--beta", **beta)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=_cmd_delay)

    s = common(sub.add_parser("cumulants", help="charge cumulants kappa_1 .. kappa_order"))
    s.add_argument("--beta", **beta)
    s.add_argument("--delta", type=_rational, default=Fraction(0))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=_cmd_cumulants)

    s = common(sub.add_parser("limit", help="n -> infinity limits (catalan: <T_k>/n, schroeder: <D_k>)"))
    s.add_argument("--kind", choices=("catalan", "schroeder"), required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ratio", type=_rational, default=Fraction(1), help="m/n for the catalan limit")
    s.set_defaults(func=_cmd_limit)

    s = common(sub.add_parser("verify", help="compare closed forms with the numerical oracles"))
    s.add_argument("--suite", choices=("quad", "mc", "brute", "duality", "all"), default="all")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples per case")
    s.set_defaults(func=_cmd_verify)
    return p


def run(argv=None, out=None, err=None) -> int:
    """Execute one command; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        err.write(f"rmtmoments: {e}\n")
        return EXIT_INVALID
    try:
        records = args.func(args)
    except DivergentMoment as e:
        records = [{"quantity": args.command, "diverges": True}]
        err.write(f"rmtmoments: {e}\n")
    except (ValueError, NonExactArgument, PoleError, ArithmeticError) as e:
        err.write(f"rmtmoments: {e}\n")
        return EXIT_INVALID
    buf = io.StringIO()
    _emit(records, args.format, buf)
    out.write(buf.getvalue())
    if any(r.get("diverges") for r in records):
        return EXIT_DIVERGENT
    if any(r.get("passed") is False for r in records):
        return EXIT_VERIFY
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))
