"""Command-line harness.

Subcommands:
  jensen      evaluate the Jensen formula for function files or a corpus
              manifest; exit 0 iff every residual is within tolerance
  zeros       print classified zero/pole records for a function file
  verify-ops  run the seeded verification suites (differential
              identities, quadrature, multiplicities)

Exit codes: 0 success, 1 tolerance failure, 2 hypothesis violation,
3 input error.  Reports are deterministic for a fixed (config, seed):
rerunning the same command yields byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import HypothesisViolationError, SliceRegError
from .io import (
    InputFormatError,
    load_function,
    render_json,
    render_report_text,
    render_reports_csv,
)
from .jensen import boundary_gap, jensen_check
from .verify import SUITE_ORDER, run_suite
from .zeros_poles import SemiregularFunction, classify_zeros, pole_structure

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3

DEFAULT_N = 48
ESCALATED_N = 128
NEAR_BOUNDARY_GAP = 0.02


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _worker_count(n_items: int) -> int:
    cap = os.environ.get("JENSEN_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        try:
            workers = max(1, int(cap))
        except ValueError:
            pass
    return max(1, min(workers, n_items))


def _jensen_case(path: Path, r: float, n: int, tol: float, seed: int, name: str, diagnostics: bool, points: int) -> dict:
    f = load_function(path)
    gap = boundary_gap(f, r)
    n_used = n
    escalated = False
    if math.isfinite(gap) and gap < NEAR_BOUNDARY_GAP and n_used < ESCALATED_N:
        n_used = ESCALATED_N
        escalated = True
    report = jensen_check(
        f, r, n_used, seed=seed, diagnostics=diagnostics, bijectivity_points=points
    )
    payload = report.to_dict()
    payload["name"] = name
    payload["file"] = str(path)
    payload["passed"] = bool(abs(report.residual) <= tol)
    payload["tolerance"] = tol
    if escalated:
        payload["warnings"] = payload["warnings"] + [
            f"zero/pole sphere within {NEAR_BOUNDARY_GAP} r of the boundary: "
            f"quadrature order escalated to n={ESCALATED_N}"
        ]
    return payload


def cmd_jensen(args: argparse.Namespace) -> int:
    cases: list[tuple[Path, float, int, str]] = []
    if args.corpus:
        manifest_path = Path(args.corpus)
        try:
            manifest = json.loads(manifest_path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"input error: {manifest_path}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        for entry in manifest.get("cases", []):
            cases.append(
                (
                    manifest_path.parent / entry["file"],
                    float(entry.get("r", args.r)),
                    int(entry.get("n", args.n)),
                    entry.get("name", entry["file"]),
                )
            )
    for fn in args.fn or []:
        cases.append((Path(fn), args.r, args.n, Path(fn).name))
    if not cases:
        print("input error: no function files given (use --fn or --corpus)", file=sys.stderr)
        return EXIT_INPUT

    def run_one(case):
        path, r, n, name = case
        return _jensen_case(
            path, r, n, args.tol, args.seed, name, not args.no_diagnostics, args.bijectivity_points
        )

    try:
        if len(cases) > 1:
            with ThreadPoolExecutor(max_workers=_worker_count(len(cases))) as pool:
                payloads = list(pool.map(run_one, cases))
        else:
            payloads = [run_one(cases[0])]
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolationError as exc:
        print(f"HypothesisViolation: {exc.hypothesis}: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SliceRegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    all_passed = all(p["passed"] for p in payloads)
    result = {
        "cases": payloads,
        "summary": {
            "count": len(payloads),
            "passed": all_passed,
            "max_abs_residual": max(abs(p["residual"]) for p in payloads),
            "tolerance": args.tol,
        },
    }
    if args.format == "json":
        _emit(render_json(result), args.out)
    elif args.format == "csv":
        rows = [
            {
                "name": p["name"],
                "file": p["file"],
                "r": p["config"]["r"],
                "n": p["config"]["n"],
                "lhs": p["lhs"],
                "rhs": p["rhs"],
                "residual": p["residual"],
                "passed": p["passed"],
            }
            for p in payloads
        ]
        _emit(render_reports_csv(rows), args.out)
    else:
        lines = []
        for p in payloads:
            status = "PASS" if p["passed"] else "FAIL"
            lines.append(
                f"[{status}] {p['name']}: residual={p['residual']:+.3e} "
                f"(r={p['config']['r']}, n={p['config']['n']})"
            )
            for w in p["warnings"]:
                lines.append(f"    warning: {w}")
        lines.append(
            f"{'PASS' if all_passed else 'FAIL'}: {len(payloads)} case(s), "
            f"max |residual| = {result['summary']['max_abs_residual']:.3e}, "
            f"tolerance {args.tol:g}"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_passed else EXIT_TOLERANCE


def cmd_zeros(args: argparse.Namespace) -> int:
    try:
        f = load_function(args.fn)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if isinstance(f, SemiregularFunction):
            zero_records = [] if f.num.degree <= 0 else classify_zeros(f.num)
            pole_records = pole_structure(f, args.r)
            pole_keys = [(p.alpha, p.beta) for p in pole_records if p.beta > 0.0]
            zeros = []
            for rec in zero_records:
                on_pole = any(
                    math.hypot(rec.alpha - a, rec.beta - b) <= 1e-6 * (1.0 + rec.point_radius)
                    for a, b in pole_keys
                )
                if not on_pole:
                    zeros.append(rec.to_dict())
            payload = {
                "file": str(args.fn),
                "zeros": zeros,
                "poles": [p.to_dict() for p in pole_records],
            }
        else:
            payload = {
                "file": str(args.fn),
                "zeros": [rec.to_dict() for rec in classify_zeros(f)] if f.degree > 0 else [],
                "poles": [],
            }
    except SliceRegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        _emit(render_json(payload), args.out)
    else:
        _emit(render_report_text(payload), args.out)
    return EXIT_OK


def cmd_verify_ops(args: argparse.Namespace) -> int:
    names = SUITE_ORDER if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        try:
            results.append(run_suite(name, args.seed))
        except KeyError as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    all_passed = all(r.passed for r in results)
    payload = {
        "seed": args.seed,
        "suites": [r.to_dict() if args.rows else {**r.to_dict(), "rows": []} for r in results],
        "passed": all_passed,
    }
    if args.format == "json":
        _emit(render_json(payload), args.out)
    elif args.format == "csv":
        rows = [row.to_dict() | {"suite": r.name} for r in results for row in r.rows]
        _emit(render_reports_csv(rows), args.out)
    else:
        lines = []
        for r in results:
            lines.append(f"[{'PASS' if r.passed else 'FAIL'}] suite {r.name}")
            for k, v in r.summary.items():
                lines.append(f"    {k}: {v}")
        lines.append("PASS" if all_passed else "FAIL")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_passed else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicereg",
        description="Quaternionic Jensen formula verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pj = sub.add_parser("jensen", help="evaluate the Jensen formula")
    pj.add_argument("--fn", action="append", help="function file (repeatable)")
    pj.add_argument("--corpus", help="corpus manifest json")
    pj.add_argument("--r", type=float, default=1.0, help="ball radius (default 1)")
    pj.add_argument("--n", type=int, default=DEFAULT_N, help="quadrature order per angle")
    pj.add_argument("--tol", type=float, default=1e-6, help="residual tolerance")
    pj.add_argument("--seed", type=int, default=0, help="seed for sampled diagnostics")
    pj.add_argument("--bijectivity-points", type=int, default=1000)
    pj.add_argument("--no-diagnostics", action="store_true", help="skip sampled diagnostics")
    pj.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pj.add_argument("--out", help="write the report to this path instead of stdout")
    pj.set_defaults(func=cmd_jensen)

    pz = sub.add_parser("zeros", help="classify zeros and poles")
    pz.add_argument("--fn", required=True, help="function file")
    pz.add_argument("--r", type=float, default=math.inf, help="pole search radius")
    pz.add_argument("--format", choices=("json", "text"), default="text")
    pz.add_argument("--out")
    pz.set_defaults(func=cmd_zeros)

    pv = sub.add_parser("verify-ops", help="run verification suites")
    pv.add_argument("--suite", default="all", help="suite name or 'all': " + ", ".join(SUITE_ORDER))
    pv.add_argument("--seed", type=int, default=7)
    pv.add_argument("--rows", action="store_true", help="include per-case residual rows in json")
    pv.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pv.add_argument("--out")
    pv.set_defaults(func=cmd_verify_ops)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
