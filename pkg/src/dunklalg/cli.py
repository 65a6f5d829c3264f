"""Command-line front end.

Subcommands:
  normal-form EXPR   rewrite an operator expression to its canonical basis
  verify SUITE       run a named verification suite and report pass/fail
  basis              list basis words of the so/gl subalgebra per degree
  centre             compute the centralizer basis at a degree bound

Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse error.
Reports are byte-deterministic unless --timing is passed.
"""

from __future__ import annotations

import argparse
import sys
import time

from .cherednik import CherednikContext, OddRank, WrongRootSystem
from .coxeter import (
    InvalidRootSystem,
    MultiplicityMap,
    UnsupportedRank,
    build_root_system,
    load_root_system_file,
)
from .exactmath import parse_rational
from .expr import EvalError, ExprSyntaxError, evaluate, parse_expression, print_expression
from .reporting import CheckResult, Report, emit_report
from .subalgebra import (
    DegreeBound,
    centralizer,
    enumerate_basis_gl,
    enumerate_basis_so,
)
from .suites import SUITES, centre_suite, run_suite


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group", default="A",
                        help="A, B, D, or custom:<config.json> (default A)")
    parser.add_argument("--rank", type=int, default=3,
                        help="rank parameter n for the standard families")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write the report to a file")
    parser.add_argument("--timing", action="store_true",
                        help="include wall time in the report")
    parser.add_argument("--numeric-g", default=None, metavar="RATIONALS",
                        help="comma-separated rational couplings (fast numeric mode)")


def build_context(args) -> tuple[CherednikContext, str, int]:
    group = args.group
    if group.startswith("custom:"):
        rs = load_root_system_file(group.split(":", 1)[1])
        family = "custom"
    else:
        rs = build_root_system(group, args.rank)
        family = group.upper()
    gmap = None
    if args.numeric_g:
        values = [parse_rational(v) for v in args.numeric_g.split(",")]
        gmap = MultiplicityMap.numeric(rs, values)
    return CherednikContext(rs, gmap), family, rs.rank


def cmd_normal_form(args) -> int:
    ctx, family, rank = build_context(args)
    start = time.monotonic()
    ast = parse_expression(args.expression)
    value = evaluate(ast, ctx, args.mode)
    rendered = value.canonical_str() if hasattr(value, "canonical_str") else value.render()
    result = CheckResult("normal-form")
    result.instances = 1
    report = Report(check="normal-form", family=family, rank=rank,
                    params={"expression": print_expression(ast), "mode": args.mode},
                    results=[result])
    if args.timing:
        report.timing = time.monotonic() - start
    if args.format == "json":
        data = report.to_dict(args.timing)
        data["normal_form"] = rendered
        import json as _json
        payload = _json.dumps(data, indent=2) + "\n"
    else:
        payload = rendered + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    sys.stdout.write(payload)
    return 0


def cmd_verify(args) -> int:
    ctx, family, rank = build_context(args)
    report = run_suite(args.suite, ctx, family, rank,
                       degree=args.degree, mode=args.mode, timing=args.timing)
    payload = emit_report(report, args.out, args.format, include_timing=args.timing)
    sys.stdout.write(payload)
    return 0 if report.status == "pass" else 1


def cmd_basis(args) -> int:
    ctx, family, rank = build_context(args)
    enum = enumerate_basis_so if args.mode == "so" else enumerate_basis_gl
    result = CheckResult("basis-%s" % args.mode)
    lines = []
    counts = {}
    for deg in range(args.degree + 1):
        words = enum(ctx.n, deg, ctx.e)
        counts[deg] = len(words)
        result.instances += len(words)
        for word in words:
            lines.append(word.render(args.mode))
    report = Report(check="basis", family=family, rank=rank,
                    params={"mode": args.mode, "degree": args.degree}, results=[result])
    if args.format == "json":
        data = report.to_dict(args.timing)
        data["counts"] = {"degree %d" % d: c for d, c in counts.items()}
        data["words"] = lines
        import json as _json
        payload = _json.dumps(data, indent=2) + "\n"
    else:
        out = []
        for deg in range(args.degree + 1):
            out.append("degree %d: %d words" % (deg, counts[deg]))
        out.extend(lines)
        payload = "\n".join(out) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    sys.stdout.write(payload)
    return 0


def cmd_centre(args) -> int:
    ctx, family, rank = build_context(args)
    degree = args.degree if args.degree is not None else (4 if args.mode == "so" else 2)
    results = centre_suite(args.mode, ctx, degree)
    solutions, _ = centralizer(args.mode, ctx, degree)
    report = Report(check="centre", family=family, rank=rank,
                    params={"mode": args.mode, "degree": degree,
                            "dimension": len(solutions)},
                    results=results)
    payload = emit_report(report, args.out, args.format, include_timing=args.timing)
    sys.stdout.write(payload)
    if args.format == "text":
        for sol in solutions:
            sys.stdout.write("basis element: %s\n" % sol.render())
    return 0 if report.status == "pass" else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunklalg",
        description="Exact engine for Dunkl angular momenta in the rational Cherednik algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    p_nf = sub.add_parser("normal-form", help="canonical form of an operator expression")
    p_nf.add_argument("expression")
    p_nf.add_argument("--mode", choices=("cherednik", "so", "gl"), default="cherednik")
    _add_common(p_nf)
    p_nf.set_defaults(func=cmd_normal_form)

    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument("suite", choices=SUITES)
    p_v.add_argument("--degree", type=int, default=None)
    p_v.add_argument("--mode", choices=("so", "gl"), default=None,
                     help="subalgebra family for the centre suite")
    _add_common(p_v)
    p_v.set_defaults(func=cmd_verify)

    p_b = sub.add_parser("basis", help="list subalgebra basis words")
    p_b.add_argument("--mode", choices=("so", "gl"), default="so")
    p_b.add_argument("--degree", type=int, default=2)
    _add_common(p_b)
    p_b.set_defaults(func=cmd_basis)

    p_c = sub.add_parser("centre", help="compute the centralizer basis")
    p_c.add_argument("--mode", choices=("so", "gl"), default="so")
    p_c.add_argument("--degree", type=int, default=None)
    _add_common(p_c)
    p_c.set_defaults(func=cmd_centre)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExprSyntaxError, EvalError, DegreeBound, UnsupportedRank,
            InvalidRootSystem, WrongRootSystem, OddRank, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("io error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
