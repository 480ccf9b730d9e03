"""
Linkform - Command Line Interface

Subcommands:
    classify  "a1,a2,a3;b1,b2,b3"   classify one family member
    construct P                     build and classify the non-standard family for p = 1 mod 4
    search                          census over a parameter box, or over constructed families
    verify                          run the invariant suite on seeded random families

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 resource limit, 4 I/O error.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from .config import load_settings
from .errors import InvalidArgument, LinkformError
from .graph import run_classification, run_classification_with_trace
from .nodes.verdict import render_table
from .nodes.verification import run_verification
from .state import CensusRow, ClassificationReport, ClassificationState, SearchSpec, VerdictKind
from .tools import export, search
from .tools.family import format_params

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3
EXIT_IO = 4

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "infinite": EXIT_OK,
    "invalid": EXIT_INVALID,
    "resource_exceeded": EXIT_RESOURCE,
    "certificate_failed": EXIT_VERIFY_FAILED,
}


def _limit_text(limit: int) -> str:
    if limit & (limit - 1) == 0:
        return f"2^{limit.bit_length() - 1}"
    return str(limit)


def _header(title: str, **fields: object) -> str:
    settings = load_settings()
    parts = [f"{key}={value}" for key, value in fields.items()]
    parts.append(f"factor_limit={_limit_text(settings.factor_limit)}")
    rule = "=" * 60
    return f"{rule}\nLINKFORM - {title}\n{' '.join(parts)}\n{rule}"


def _report_row(report: ClassificationReport) -> CensusRow:
    lf = report.linking
    return CensusRow(
        params=report.params,
        n=report.invariants.n,
        h4_order=report.invariants.h4_order,
        rho=lf.rho if lf else None,
        kappa=lf.kappa if lf else None,
        verdict=report.verdict.kind,
        egs_prime=report.egs.p if report.egs else None,
    )


def _emit_classification(state: ClassificationState, fmt: str, title: str, trace: bool) -> int:
    """Print a classification outcome and return its exit code."""
    report = state["report"]
    if trace:
        print("--- Execution Trace ---", file=sys.stderr)
        for line in state["execution_trace"]:
            print(f"  → {line}", file=sys.stderr)

    if report is None:
        for error in state["errors"]:
            print(f"error: {error}", file=sys.stderr)
        return _STATUS_EXIT.get(state["status"], EXIT_VERIFY_FAILED)

    if fmt == "json":
        print(export.report_to_json(report))
    elif fmt == "csv":
        print(export.rows_to_csv_text([_report_row(report)]), end="")
    else:
        print(_header(title))
        print(render_table(report))
    return EXIT_OK


def _classify(text: str, trace: bool) -> ClassificationState:
    if trace:
        state, _ = run_classification_with_trace(text)
        return state
    return run_classification(text)


def cmd_classify(args: argparse.Namespace) -> int:
    """Classify one parameter string."""
    state = _classify(args.params, args.trace)
    return _emit_classification(state, args.format, f"classify {args.params}", args.trace)


def cmd_construct(args: argparse.Namespace) -> int:
    """Construct the non-standard family for p and classify it."""
    params = search.construct_corollary(args.p)
    m = search.find_m(args.p)
    if args.format == "table":
        print(f"p = {args.p}, m = {m}, family {format_params(params)}")

    state = _classify(format_params(params), args.trace)
    code = _emit_classification(state, args.format, f"construct p={args.p}", args.trace)
    report = state["report"]
    if code == EXIT_OK and (report is None or report.verdict.kind != VerdictKind.NON_STANDARD):
        print(f"error: constructed family for p = {args.p} is not NonStandard", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return code


def _census_rows(args: argparse.Namespace) -> list[CensusRow]:
    if args.corollary:
        if args.primes_to is None:
            raise InvalidArgument("--corollary needs --primes-to")
        return list(search.corollary_census(args.primes_to))

    try:
        spec = SearchSpec(
            bound=args.bound,
            pin_p=args.pin_p,
            require_finite=args.require_finite,
            verdict_filter=args.filter,
            min_order=args.min_order,
            max_order=args.max_order,
            coprime_only=args.coprime_only,
            dedup=not args.no_dedup,
        )
    except ValidationError as e:
        raise InvalidArgument(f"invalid search bounds: {e.errors()[0]['msg']}") from e
    return list(search.enumerate_census(spec, workers=args.workers))


def _print_rows_table(rows: list[CensusRow]) -> None:
    for row in rows:
        verdict = row.verdict.value if row.verdict else export.RESOURCE_EXCEEDED_MARKER
        egs = f"  p={row.egs_prime}" if row.egs_prime else ""
        print(f"  {format_params(row.params):<32} n={row.n:<10} rho={row.rho}  {verdict}{egs}")


def cmd_search(args: argparse.Namespace) -> int:
    """Run a census and write it to --out (or stdout)."""
    rows = _census_rows(args)
    summary_stream = sys.stdout if args.out else sys.stderr
    fmt = "jsonl" if args.format == "json" else "csv"

    if args.out:
        written = export.write_census(rows, Path(args.out), fmt)
        print(_header("search", rows=written, out=args.out))
    elif args.format == "table":
        print(_header("search", rows=len(rows)))
        _print_rows_table(rows)
    elif fmt == "csv":
        print(export.rows_to_csv_text(rows), end="")
    else:
        for row in rows:
            print(export.row_to_json(row))

    types = search.distinct_types_report(rows)
    print(f"NonStandard rows: {sum(types.counts.values())}", file=summary_stream)
    print(f"distinct |H^4| among NonStandard rows: {len(types.orders)}", file=summary_stream)
    for order in types.orders:
        rep = format_params(types.representatives[order])
        print(f"  |H^4| = {order}: {types.counts[order]} row(s), e.g. {rep}", file=summary_stream)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the invariant suite; exit 1 with a counterexample on failure."""
    if args.samples < 1:
        print(f"error: --samples must be >= 1, got {args.samples}", file=sys.stderr)
        return EXIT_INVALID

    print(_header("verify", seed=args.seed, samples=args.samples))
    report = run_verification(args.seed, args.samples)
    for check in report.checks:
        mark = "PASS" if check.passed else "FAIL"
        print(f"  [{mark}] {check.name} ({check.cases} cases)")
        if check.counterexample:
            print(f"         counterexample: {check.counterexample}")
    print("ALL CHECKS PASSED" if report.passed else "VERIFICATION FAILED")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=["table", "json", "csv"],
        default="table",
        help="Output format (default: table)",
    )
    common.add_argument("--trace", action="store_true", help="Show execution trace")

    parser = argparse.ArgumentParser(
        prog="linkform",
        description="Linkform - linking-form classifier for the 7-manifolds M(a, b)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", parents=[common], help="Classify one family member")
    p_classify.add_argument("params", help='Parameters "a1,a2,a3;b1,b2,b3"')
    p_classify.set_defaults(handler=cmd_classify)

    p_construct = sub.add_parser("construct", parents=[common], help="Non-standard family for a prime p = 1 mod 4")
    p_construct.add_argument("p", type=int, help="Prime p = 1 mod 4")
    p_construct.set_defaults(handler=cmd_construct)

    p_search = sub.add_parser("search", parents=[common], help="Census over a parameter range")
    p_search.add_argument("--bound", type=int, default=11, help="Bound on |entries| (default: 11)")
    p_search.add_argument("--pin-p", type=int, default=None, help="Pin a1 = b1 = P")
    p_search.add_argument("--filter", choices=["all", "standard", "nonstandard"], default="all")
    p_search.add_argument("--primes-to", type=int, default=None, help="Upper bound for --corollary")
    p_search.add_argument("--corollary", action="store_true", help="Census of constructed non-standard families")
    p_search.add_argument("--out", type=str, default=None, help="Output file (CSV, or JSON Lines with --format json)")
    p_search.add_argument("--workers", type=int, default=None, help="Worker processes (default: LINKFORM_WORKERS)")
    p_search.add_argument("--coprime-only", action="store_true", help="Only gcd(a1, b1) = 1")
    p_search.add_argument("--min-order", type=int, default=None)
    p_search.add_argument("--max-order", type=int, default=None)
    p_search.add_argument("--require-finite", action="store_true", help="Skip n = 0")
    p_search.add_argument("--no-dedup", action="store_true", help="Keep families with equal canonical keys")
    p_search.set_defaults(handler=cmd_search)

    p_verify = sub.add_parser("verify", parents=[common], help="Run the invariant suite")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.handler(args))
    except LinkformError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
