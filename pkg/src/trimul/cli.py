"""Command-line surface: verification campaigns, multiplication runs,
complexity tables and float benchmarks.

Exit codes are a stable contract: 0 success, 1 mathematical failure
(identity violated, oracle check failed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import bilinear, complexity, trilinear
from .core import (
    DisjointInputs,
    InputFormatError,
    SplitMix64,
    format_scalar,
    naive_triple_product,
)


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def cmd_verify(args) -> int:
    if args.n < 1:
        return _fail_usage("--n must be >= 1")
    if args.trials < 1:
        return _fail_usage("--trials must be >= 1")
    if args.range < 1:
        return _fail_usage("--range must be >= 1")
    if args.g == 0 or args.g == args.n:
        return _fail_usage(f"--g must avoid 0 and n={args.n} (g + h = n with g, h nonzero)")
    report = trilinear.verify_identity(args.n, args.g, args.q, args.trials,
                                       args.seed, bound=args.range)
    _emit(json.dumps(report.to_doc(), indent=2), args.output)
    return 0 if report.passed else 1


def cmd_multiply(args) -> int:
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
        inputs = DisjointInputs.from_doc(doc)
    except (OSError, json.JSONDecodeError, InputFormatError) as exc:
        return _fail_usage(f"cannot read inputs: {exc}")
    if inputs.n < 2:
        return _fail_usage("the bilinear scheme needs n >= 2")

    result = bilinear.disjoint_multiply(inputs, mode=args.mode)
    _emit(json.dumps(result.to_doc(args.mode), indent=2), args.output)

    if not args.check:
        return 0
    want = naive_triple_product(inputs)
    if (result.c, result.w, result.z) == (want.c, want.w, want.z):
        print("check: outputs equal the naive oracle", file=sys.stderr)
        return 0
    fix = bilinear.cross_corrections(inputs)
    print("check failed: outputs differ from the naive oracle", file=sys.stderr)
    for label, got, ref, cross, cross_name in (
            ("C", result.c, want.c, fix.dc, "Y*U"),
            ("W", result.w, want.w, fix.dw, "B*X"),
            ("Z", result.z, want.z, fix.dz, "V*A")):
        residual = got - ref
        matches = "equals" if residual == cross else "does NOT equal"
        print(f"  residual {label}: {matches} cross product {cross_name}",
              file=sys.stderr)
    return 1


def cmd_complexity(args) -> int:
    try:
        reports = complexity.scan(args.m_lo, args.m_hi)
    except ValueError as exc:
        return _fail_usage(str(exc))

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["m", "M_disjoint", "omega_disjoint", "M_single", "omega_single"])
    for rep in reports:
        writer.writerow([rep.m, rep.m_disjoint, f"{rep.omega_disjoint:.10f}",
                         format_scalar(rep.m_single), f"{rep.omega_single:.10f}"])
    _emit(buf.getvalue(), args.csv)

    md, wd = complexity.find_min_omega("disjoint", args.m_lo, args.m_hi)
    ms, ws = complexity.find_min_omega("single", args.m_lo, args.m_hi)
    summary = {
        "m_lo": args.m_lo,
        "m_hi": args.m_hi,
        "min_disjoint": {"m": md, "omega": round(wd, 10)},
        "min_single": {"m": ms, "omega": round(ws, 10)},
    }
    _emit(json.dumps(summary, indent=2), args.json)
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        return _fail_usage(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    if not sizes or any(n < 2 for n in sizes):
        return _fail_usage("--sizes entries must all be >= 2")
    if args.reps < 1:
        return _fail_usage("--reps must be >= 1")

    runners = (
        ("naive", naive_triple_product),
        ("raw", lambda inp: bilinear.disjoint_multiply(inp, mode="raw")),
        ("corrected", lambda inp: bilinear.disjoint_multiply(inp, mode="corrected")),
    )
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "algorithm", "mult_count", "mean_seconds"])
    gen = SplitMix64(args.seed)
    for n in sizes:
        inputs = DisjointInputs.random_float(n, gen.next64())
        for name, run in runners:
            start = time.perf_counter()
            for _ in range(args.reps):
                result = run(inputs)
            elapsed = (time.perf_counter() - start) / args.reps
            writer.writerow([n, name, result.op_count, f"{elapsed:.6e}"])
    _emit(buf.getvalue(), args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trimul",
        description="Exact verification and execution of the corrected "
                    "trilinear scheme for three disjoint matrix products.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="randomized exact identity verification")
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--g", type=_fraction, required=True,
                   help="split parameter g (h = n - g), rational like 1 or 1/2")
    p.add_argument("--q", type=_fraction, required=True,
                   help="correction parameter; the identity holds iff q = n")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--range", type=int, default=5,
                   help="entries drawn uniformly from [-range, range]")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("multiply", help="run the bilinear scheme on a six-matrix file")
    p.add_argument("--input", required=True,
                   help="JSON file with matrices A, B, U, V, X, Y")
    p.add_argument("--mode", choices=("raw", "corrected"), default="corrected")
    p.add_argument("--check", action="store_true",
                   help="compare outputs against the naive oracle")
    p.add_argument("--output", help="write the result JSON here instead of stdout")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("complexity", help="operation counts and exponent table")
    p.add_argument("--m-lo", type=int, default=4)
    p.add_argument("--m-hi", type=int, default=1000)
    p.add_argument("--csv", help="write the CSV table here instead of stdout")
    p.add_argument("--json", help="write the JSON summary here instead of stdout")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("bench", help="float-mode timing of naive vs raw vs corrected")
    p.add_argument("--sizes", required=True, help="comma-separated dimensions, e.g. 4,8,16")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", help="write the CSV report here instead of stdout")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, ValueError) as exc:
        return _fail_usage(str(exc))


if __name__ == "__main__":
    sys.exit(main())
