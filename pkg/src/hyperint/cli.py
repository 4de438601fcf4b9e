"""Command-line surface with stable JSON output.

Exit codes: 0 success, 1 usage or parse error, 2 domain error,
3 verification failure.  Rationals are written as ``p/q`` text; floats are
accepted only where evaluation is numeric anyway (--u, eval).  The
environment variable HYPERINT_TOLERANCE overrides numeric verification
tolerances when no --tol flag is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .canonical import canonical_form, d4_orbit, elliptic_definite
from .errors import DomainError, VerificationError
from .moebius import INF
from .ratpoly import Polynomial, Scalar, rational, scalar_str
from .reduction import reduce, reduce_root_pole
from .special import (
    canonical_i0,
    canonical_p,
    ellip_f,
    ellip_pi,
    lauricella_fd,
)
from .verify import (
    run_canonical_suite,
    run_property_suite,
    run_reduction_suite,
    verify_lauricella,
    verify_orbit,
    verify_reduction_exact,
    verify_reduction_numeric,
)

__all__ = ["CliConfig", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser whose errors map to exit code 1, not 2."""

    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    """Validated polynomial input: exactly one of coeffs / roots+leading."""

    weight: Polynomial
    roots: Optional[Tuple[Scalar, ...]]
    leading: Scalar


def _rationals(text: str) -> Tuple[Fraction, ...]:
    try:
        return tuple(rational(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise _UsageError(f"malformed rational list {text!r}: {exc}")


def _rational_arg(text: str, flag: str) -> Fraction:
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise _UsageError(f"malformed rational for {flag}: {exc}")


def _config(args) -> CliConfig:
    has_coeffs = getattr(args, "coeffs", None) is not None
    has_roots = getattr(args, "roots", None) is not None
    if has_coeffs == has_roots:
        raise _UsageError("provide exactly one of --coeffs or --roots")
    leading = _rational_arg(args.leading, "--leading") if args.leading else Fraction(1)
    if has_coeffs:
        coeffs = _rationals(args.coeffs)
        return CliConfig(Polynomial(coeffs), None, coeffs[-1] if coeffs else Fraction(0))
    roots = _rationals(args.roots)
    return CliConfig(Polynomial.from_roots(roots, leading=leading), roots, leading)


def _projective_point(text: str):
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        pass
    try:
        return float(text)
    except ValueError as exc:
        raise _UsageError(f"malformed point {text!r}: {exc}")


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise _UsageError(f"--{name} is required for this evaluation")


def _emit(payload: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        for key, value in payload.items():
            print(f"{key}: {json.dumps(value, separators=(',', ':'))}")


def _tolerance(args, fallback: float) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("HYPERINT_TOLERANCE")
    if env:
        try:
            return float(env)
        except ValueError:
            raise _UsageError(f"malformed HYPERINT_TOLERANCE {env!r}")
    return fallback


# -- subcommand handlers -----------------------------------------------------


def _cmd_reduce(args) -> int:
    config = _config(args)
    p = _rational_arg(args.p, "--p") if args.p else Fraction(0)
    if args.root_pole:
        if args.n != -1:
            raise _UsageError("--root-pole reduces only the n = -1 integrand")
        result = reduce_root_pole(config.weight, p)
    else:
        result = reduce(config.weight, p, args.n)
    basis = [
        {"integral": el.label(), "coeff": scalar_str(c)}
        for el, c in sorted(
            result.basic_coeffs.items(), key=lambda kv: (kv[0].n, scalar_str(kv[0].p))
        )
    ]
    elem = result.elementary
    raw = [
        {"exp": e - 1, "coeff": scalar_str(c / 2)}
        for e, c in sorted(elem.terms.items())
    ]
    value_poly = [
        {"exp": e, "coeff": scalar_str(c)} for e, c in sorted(elem.terms.items())
    ]
    _emit(
        {
            "weight": [scalar_str(c) for c in config.weight.coeffs],
            "p": scalar_str(p),
            "n": args.n,
            "route": result.route,
            "basis": basis,
            "elementary_center": scalar_str(elem.center),
            "elementary": raw,
            "elementary_value_poly": value_poly,
        },
        args.format,
    )
    return 0


def _cmd_canonical(args) -> int:
    if args.roots is None:
        raise _UsageError("--roots is required")
    roots = _rationals(args.roots)
    leading = _rational_arg(args.leading, "--leading") if args.leading else Fraction(1)
    form = canonical_form(leading, roots)
    _emit(form.to_json_dict(), args.format)
    return 0


def _cmd_eval(args) -> int:
    fn = args.fn
    if fn == "F":
        _need(args, "phi", "l")
        payload = {"fn": fn, "value": ellip_f(args.phi, args.l)}
    elif fn == "Pi":
        _need(args, "phi", "h", "l")
        payload = {
            "fn": fn,
            "value": ellip_pi(args.phi, args.h, args.l, principal_value=args.pv),
        }
    elif fn == "I0":
        _need(args, "t", "k")
        payload = {"fn": fn, "value": canonical_i0(args.t, args.k)}
    elif fn == "P":
        _need(args, "t", "h", "k")
        payload = {
            "fn": fn,
            "value": canonical_p(args.t, args.h, args.k, principal_value=args.pv),
        }
    elif fn == "FD":
        _need(args, "a", "b", "c", "x")
        bs = tuple(float(v) for v in args.b.split(","))
        xs = tuple(float(v) for v in args.x.split(","))
        payload = {"fn": fn, "value": lauricella_fd(args.a, bs, args.c, xs)}
    else:  # definite
        _need(args, "kind", "roots", "u")
        roots = _rationals(args.roots)
        leading = (
            _rational_arg(args.leading, "--leading") if args.leading else Fraction(1)
        )
        p = _rational_arg(args.p, "--p") if args.p else None
        comb = elliptic_definite(args.kind, leading, roots, _projective_point(args.u), p)
        payload = {
            "fn": "definite",
            "value": comb.value(),
            "combination": comb.to_json_dict(),
        }
    _emit(payload, args.format)
    return 0


def _cmd_orbit(args) -> int:
    if args.roots is None:
        raise _UsageError("--roots is required")
    roots = _rationals(args.roots)
    leading = _rational_arg(args.leading, "--leading") if args.leading else Fraction(1)
    p = _rational_arg(args.p, "--p") if args.p else None
    u = _projective_point(args.u) if args.u else None
    records = []
    for record in d4_orbit(args.kind, leading, roots, u=u, p=p):
        blob = record.to_json_dict()
        if u is not None:
            blob["value"] = record.combination.value()
        records.append(blob)
    _emit({"kind": args.kind, "orbit": records}, args.format)
    return 0


def _formula_reports(tol_numeric: float, tol_fd: float):
    quintic = Polynomial.from_roots((0, 1, 2, 3, 4), leading=Fraction(1, 24))
    pole = Fraction(3, 2)
    result = reduce(quintic, pole, -3)
    reports = [
        verify_reduction_exact(quintic, pole, -3, result),
        verify_reduction_numeric(
            quintic, pole, -3, result, (0.1, 0.9), tol=tol_numeric
        ),
    ]
    for kind, p in (("const", None), ("x", None), ("pole", 5)):
        reports.append(verify_orbit(kind, (1, 2, 3, 4), 6, p=p, tol=tol_numeric))
    reports.append(verify_lauricella(tol=tol_fd))
    return reports


def _cmd_verify(args) -> int:
    tol_numeric = _tolerance(args, 1e-9)
    tol_fd = _tolerance(args, 1e-6)
    reports = []
    if args.suite in ("reduction", "all"):
        reports.extend(run_reduction_suite(args.seed, args.cases or 200))
    if args.suite in ("canonical", "all"):
        reports.extend(run_canonical_suite(args.seed, args.cases or 50))
    if args.suite in ("property", "all"):
        reports.extend(run_property_suite(args.seed, args.cases or 1000))
    if args.suite in ("formulas", "all"):
        reports.extend(_formula_reports(tol_numeric, tol_fd))
    for report in reports:
        print(report.to_json_line())
    passed = sum(1 for r in reports if r.passed)
    summary = {
        "suite": args.suite,
        "seed": args.seed,
        "total": len(reports),
        "passed": passed,
    }
    print(json.dumps(summary, separators=(",", ":")))
    return 0 if passed == len(reports) else 3


# -- parser ------------------------------------------------------------------


def _add_weight_flags(sub):
    sub.add_argument("--coeffs", help="weight coefficients c0,c1,... low to high")
    sub.add_argument("--roots", help="weight roots r1,r2,... as rationals")
    sub.add_argument("--leading", help="leading coefficient for --roots (default 1)")


def build_parser() -> _Parser:
    parser = _Parser(prog="hyperint", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    reduce_p = sub.add_parser("reduce", help="reduce (x-p)**n / sqrt(Q) to the basis")
    _add_weight_flags(reduce_p)
    reduce_p.add_argument("--p", help="expansion center / pole, rational")
    reduce_p.add_argument("--n", type=int, required=True, help="power of (x-p)")
    reduce_p.add_argument(
        "--root-pole",
        action="store_true",
        help="p is a simple root of the weight (only n = -1)",
    )
    reduce_p.set_defaults(func=_cmd_reduce)

    canon_p = sub.add_parser("canonical", help="canonical form of an even root cycle")
    canon_p.add_argument("--roots", help="root labels in cyclic order")
    canon_p.add_argument("--leading", help="leading coefficient (default 1)")
    canon_p.set_defaults(func=_cmd_canonical)

    eval_p = sub.add_parser("eval", help="evaluate canonical integrals numerically")
    eval_p.add_argument("fn", choices=("F", "Pi", "I0", "P", "FD", "definite"))
    eval_p.add_argument("--phi", type=float)
    eval_p.add_argument("--l", type=float)
    eval_p.add_argument("--h", type=float)
    eval_p.add_argument("--t", type=float)
    eval_p.add_argument("--k", type=float)
    eval_p.add_argument("--pv", action="store_true", help="principal value")
    eval_p.add_argument("--a", type=float)
    eval_p.add_argument("--b", help="comma-separated exponents for FD")
    eval_p.add_argument("--c", type=float)
    eval_p.add_argument("--x", help="comma-separated arguments for FD")
    eval_p.add_argument("--kind", choices=("const", "x", "pole"))
    eval_p.add_argument("--roots")
    eval_p.add_argument("--leading")
    eval_p.add_argument("--u", help="arc endpoint (rational, float or inf)")
    eval_p.add_argument("--p", help="pole location, rational")
    eval_p.set_defaults(func=_cmd_eval)

    orbit_p = sub.add_parser("orbit", help="all eight dihedral formula variants")
    orbit_p.add_argument("--kind", choices=("const", "x", "pole"), required=True)
    orbit_p.add_argument("--roots")
    orbit_p.add_argument("--leading")
    orbit_p.add_argument("--u", help="arc endpoint (omit for indefinite forms)")
    orbit_p.add_argument("--p", help="pole location, rational")
    orbit_p.set_defaults(func=_cmd_orbit)

    verify_p = sub.add_parser("verify", help="run the verification harness")
    verify_p.add_argument(
        "--suite",
        choices=("reduction", "canonical", "property", "formulas", "all"),
        default="all",
    )
    verify_p.add_argument("--seed", type=int, default=20260814)
    verify_p.add_argument(
        "--cases", type=int, help="override the per-suite case count"
    )
    verify_p.add_argument("--tol", type=float, help="numeric tolerance override")
    verify_p.set_defaults(func=_cmd_verify)

    for sub_parser in (reduce_p, canon_p, eval_p, orbit_p, verify_p):
        sub_parser.add_argument(
            "--format", choices=("json", "text"), default="json"
        )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
