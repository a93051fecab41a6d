"""Command-line front-end.

``corepalg run SPEC`` executes the full pipeline on an extension spec file
and writes ``report.json`` plus ``report.txt`` into the output directory;
``corepalg compare A B`` diffs two report files numerically.

Exit codes: 0 all enabled checks pass (or reports match), 1 check or
comparison failure, 2 input or schema error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import CorepalgError
from .pipeline import DEFAULT_METHOD_COMPARE_TOL, Flags, run_pipeline
from .report import compare_reports, dumps_canonical, render_text

_OUT_ENV = "COREPALG_OUT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corepalg",
        description="Matrix algebras of continuous groups with antilinear operations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run the analysis pipeline on a spec file")
    run_p.add_argument("spec", help="extension spec JSON file")
    run_p.add_argument(
        "--out",
        default=None,
        help=f"output directory (default ${_OUT_ENV} or ./corepalg-out)",
    )
    run_p.add_argument("--type", choices=["a", "b", "auto"], default=None,
                       help="override the corep type declared in the spec")
    run_p.add_argument("--method", choices=["analytic", "fd", "both"], default="both")
    run_p.add_argument("--seed", type=int, default=1234)
    run_p.add_argument("--trials", type=int, default=200)
    run_p.add_argument("--tol-closure", type=float, default=1e-8)
    run_p.add_argument("--tol-jacobi", type=float, default=1e-6)
    run_p.add_argument("--tol-law", type=float, default=1e-9)
    run_p.add_argument("--compare", default=None, metavar="FILE",
                       help="compare the fresh report against a prior report.json")
    run_p.add_argument("--compare-tol", type=float, default=1e-9)

    cmp_p = sub.add_parser("compare", help="numerically diff two report files")
    cmp_p.add_argument("report_a")
    cmp_p.add_argument("report_b")
    cmp_p.add_argument("--tol", type=float, default=DEFAULT_METHOD_COMPARE_TOL)
    return parser


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CorepalgError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CorepalgError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None


def _print_comparison(result) -> None:
    for err in result.schema_errors:
        print(f"schema: {err}")
    for wit in result.witnesses:
        if wit.delta is None:
            print(f"diff: {wit.path}: {wit.left!r} != {wit.right!r}")
        else:
            print(f"diff: {wit.path}: {wit.left} vs {wit.right} (|delta| = {wit.delta:.3e})")
    if result.matches:
        print("reports match")


def _cmd_run(args) -> int:
    spec = _load_json(args.spec)
    if args.type is not None and args.type == "auto":
        args.type = None  # same as not overriding
    flags = Flags(
        method=args.method,
        seed=args.seed,
        trials=args.trials,
        tol_closure=args.tol_closure,
        tol_jacobi=args.tol_jacobi,
        tol_law=args.tol_law,
        type_override=args.type,
    )
    result = run_pipeline(spec, flags)

    out_dir = Path(args.out or os.environ.get(_OUT_ENV, "corepalg-out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(dumps_canonical(result.report), encoding="utf-8")
    (out_dir / "report.txt").write_text(
        render_text(result.report, result.timings), encoding="utf-8"
    )

    for name in sorted(result.report["checks"]):
        entry = result.report["checks"][name]
        status = "PASS" if entry["passed"] else "FAIL"
        print(f"[{status}] {name}: {entry['value']:.3e} (threshold {entry['threshold']:.1e})")
    print(f"report written to {out_dir}")

    exit_code = 0 if result.passed else 1
    if args.compare is not None:
        golden = _load_json(args.compare)
        comparison = compare_reports(result.report, golden, tol=args.compare_tol)
        _print_comparison(comparison)
        if comparison.schema_errors:
            return 2
        if comparison.witnesses:
            exit_code = max(exit_code, 1)
    return exit_code


def _cmd_compare(args) -> int:
    a = _load_json(args.report_a)
    b = _load_json(args.report_b)
    result = compare_reports(a, b, tol=args.tol)
    _print_comparison(result)
    if result.schema_errors:
        return 2
    return 0 if result.matches else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_compare(args)
    except CorepalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
