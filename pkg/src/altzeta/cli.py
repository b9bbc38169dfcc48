"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from collections.abc import Sequence

from . import gamma, regprod, zeta
from .errors import AltZetaError
from .numcore import EvalConfig, SeriesResult
from .report import (
    build_document,
    render_csv,
    render_json,
    render_text,
    series_row,
    verification_row,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2, 3
DEFAULT_TOL = 1e-8

_BARE_UNIT = re.compile(r"(?<![\d.])([ij])")


def parse_complex(text: str) -> complex:
    """Accept ``a+bi``, ``a+bj``, ``(a,b)`` and plain reals."""
    raw = text.strip()
    try:
        if raw.startswith("(") and raw.endswith(")"):
            parts = raw[1:-1].split(",")
            if len(parts) != 2:
                raise ValueError
            value = complex(float(parts[0]), float(parts[1]))
        else:
            value = complex(_BARE_UNIT.sub(r"1\1", raw.replace(" ", "")).replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise argparse.ArgumentTypeError(f"non-finite value: {text!r}")
    return value


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_complex_list(text: str) -> list[complex]:
    items = [p for p in _split_top_level(text) if p.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return [parse_complex(p) for p in items]


def parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(p)) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def positive_int(text: str) -> int:
    try:
        v = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _format_parent(default: str) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=("text", "json", "csv"), default=default)
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _format_parent("text")

    parser = argparse.ArgumentParser(
        prog="altzeta",
        description="Alternating zeta functions, modified gamma, and regularized products.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ev = sub.add_parser("eval", help="evaluate a function").add_subparsers(
        dest="target", required=True
    )
    p = ev.add_parser("zeta-e", parents=[common])
    p.add_argument("--s", type=parse_complex, required=True)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--method", choices=("split", "direct"), default="split")
    p = ev.add_parser("gamma-tilde", parents=[common])
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--route", choices=("closed", "product", "series"), default="closed")
    p.add_argument("--pairs", type=positive_int, default=gamma.PRODUCT_PAIRS)
    p = ev.add_parser("psi-tilde", parents=[common])
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--order", type=nonneg_int, default=None)
    p = ev.add_parser("stieltjes", parents=[common])
    p.add_argument("--k", type=nonneg_int, required=True)
    p.add_argument("--z", type=parse_complex, required=True)

    ve = sub.add_parser("verify", help="verify an identity").add_subparsers(
        dest="target", required=True
    )
    p = ve.add_parser("mizuno", parents=[common])
    p.add_argument("--zs", type=parse_complex_list, required=True)
    p.add_argument("--cutoff", type=positive_int, default=None)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("kurokawa", parents=[common])
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--y", type=parse_complex, required=True)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("lerch", parents=[common])
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("lerch-qi", parents=[common])
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--y", type=parse_complex, required=True)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("lerch-classical", parents=[common])
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("wallis", parents=[common])
    p.add_argument("--pairs", type=positive_int, required=True)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)
    p = ve.add_parser("suite", parents=[common])
    p.add_argument("--seed", type=nonneg_int, default=42)
    p.add_argument("--cases", type=positive_int, default=100)
    p.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)

    ta = sub.add_parser("table", help="tabulate a function").add_subparsers(
        dest="target", required=True
    )
    p = ta.add_parser("gamma-tilde", parents=[_format_parent("csv")])
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=positive_float, required=True)

    be = sub.add_parser("bench", help="acceleration benchmarks").add_subparsers(
        dest="target", required=True
    )
    p = be.add_parser("accel", parents=[common])
    p.add_argument("--spec", type=parse_complex_list, required=True)
    p.add_argument("--methods", default="paired,eta-expansion")
    p.add_argument("--sizes", type=parse_sizes, default=[1000, 10000, 100000])
    return parser


def config_from_env() -> EvalConfig:
    raw = os.environ.get("REGPROD_MAX_TERMS")
    if raw is None:
        return EvalConfig()
    try:
        return EvalConfig(max_terms=int(float(raw)))
    except (ValueError, AltZetaError):
        raise AltZetaError(f"REGPROD_MAX_TERMS must be a positive integer, got {raw!r}") from None


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, 1000 * (time.perf_counter() - t0)


def _wrap(value: complex, method: str, err: float = 0.0) -> SeriesResult:
    return SeriesResult(value, err, 0, method, True)


def _run_eval(args, cfg):
    t = args.target
    if t == "zeta-e":
        res, ms = _timed(zeta.alt_hurwitz_zeta, args.s, args.z, args.method, cfg)
        return [series_row(t, res, ms, s=args.s, z=args.z)], [res]
    if t == "gamma-tilde":
        res, ms = _timed(gamma.gamma_tilde, args.z, args.route, cfg, pairs=args.pairs)
        return [series_row(t, res, ms, z=args.z, route=gamma.resolve_route(args.route))], [res]
    if t == "psi-tilde":
        if args.order is None:
            val, ms = _timed(gamma.psi_tilde, args.z, cfg)
            res = _wrap(val, "euler-maclaurin")
        else:
            val, ms = _timed(gamma.psi_tilde_n, args.order, args.z, cfg)
            res = _wrap(val, "euler-maclaurin")
        return [series_row(t, res, ms, z=args.z, order=args.order)], [res]
    if t == "stieltjes":
        out, ms = _timed(gamma.mod_stieltjes, args.k, args.z, cfg)
        res = _wrap(out.value, "contour", out.error_estimate)
        return [series_row(t, res, ms, k=args.k, z=args.z)], [res]
    raise AssertionError(t)


def _run_verify(args, cfg):
    t = args.target
    if t == "mizuno":
        spec = regprod.ProductSpec(tuple(args.zs), args.cutoff)
        reps = [regprod.verify_mizuno(spec, args.tol, cfg)]
    elif t == "kurokawa":
        reps = [regprod.kurokawa_wakayama(args.n, args.x, args.y, args.tol, cfg)]
    elif t == "lerch":
        reps = [regprod.verify_lerch_type(args.x, args.tol, cfg)]
    elif t == "lerch-qi":
        reps = [regprod.verify_lerch_qi(args.x, args.y, args.tol, cfg)]
    elif t == "lerch-classical":
        reps = [regprod.classical_lerch_check(args.z, args.tol, cfg)]
    elif t == "wallis":
        reps = [regprod.verify_wallis(args.pairs, args.tol, cfg)]
    elif t == "suite":
        reps = regprod.verify_suite(args.seed, args.cases, args.tol, cfg)
    else:
        raise AssertionError(t)
    return reps


def _request_echo(args) -> dict:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("subcommand", "target", "format", "tol", "seed")
    }
    return {
        "subcommand": args.subcommand,
        "target": args.target,
        "params": params,
        "format": args.format,
        "tolerance": getattr(args, "tol", None),
        "seed": getattr(args, "seed", None),
    }


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        out = render_json(doc)
    elif fmt == "csv":
        out = render_csv(doc)
    else:
        out = render_text(doc)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = config_from_env()
        code, doc = _dispatch(args, cfg)
    except AltZetaError as exc:
        print(f"altzeta: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    _emit(doc, args.format)
    return code


def _dispatch(args, cfg: EvalConfig) -> tuple[int, dict]:
    request = _request_echo(args)
    if args.subcommand == "eval":
        rows, results = _run_eval(args, cfg)
        ok = all(r.converged for r in results)
        summary = {"total": len(rows), "converged": sum(r.converged for r in results)}
        return (EXIT_OK if ok else EXIT_NONCONVERGED), build_document(
            request, cfg.as_dict(), rows, summary
        )

    if args.subcommand == "verify":
        reps = _run_verify(args, cfg)
        rows = [verification_row(r) for r in reps]
        passed = sum(r.passed for r in reps)
        summary = {"total": len(reps), "passed": passed, "failed": len(reps) - passed}
        prop_fail = sum(1 for r in reps if r.metadata.get("properties_ok") is False)
        if args.target == "suite":
            summary["property_failures"] = prop_fail
        nonconv = any(r.metadata.get("converged") is False for r in reps)
        if passed < len(reps) or prop_fail:
            code = EXIT_FAIL
        elif nonconv:
            code = EXIT_NONCONVERGED
        else:
            code = EXIT_OK
        return code, build_document(request, cfg.as_dict(), rows, summary)

    if args.subcommand == "table":
        if args.stop < args.start:
            raise AltZetaError("--to must not be below --from")
        count = math.floor((args.stop - args.start) / args.step + 1e-9) + 1
        rows = []
        for i in range(count):
            x = args.start + i * args.step
            g = gamma.gamma_tilde(x, "closed_form", cfg)
            rows.append({"x": x, "gamma_tilde": g.value, "psi_tilde": gamma.psi_tilde(x, cfg)})
        return EXIT_OK, build_document(request, cfg.as_dict(), rows, {"rows": len(rows)})

    if args.subcommand == "bench":
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
        spec = regprod.ProductSpec(tuple(args.spec))
        rows = regprod.bench_accel(spec, methods, args.sizes, cfg)
        summary = {"rows": len(rows), "cutoff": spec.resolved_cutoff()}
        return EXIT_OK, build_document(request, cfg.as_dict(), rows, summary)

    raise AssertionError(args.subcommand)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
