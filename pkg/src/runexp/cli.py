"""Command-line front end.

Verbs: generate (emit a family word), analyze (run statistics), runs
(dump the run listing), verify (oracle comparison + handle checks +
bound checks, JSON report), table3 (reproduce the built-in family
table against embedded reference values), certify-lower-bound (exact
rational check that sigma/n beats the target on a family word power).

Exit codes: 0 all good, 1 a verification or comparison failed,
2 usage or I/O problems.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Sequence, TextIO

from .families import generate_member, load_family, predicted_length, run_rich_word
from .handles import verify_handle_properties
from .reference import MAIN_FAMILY_REFERENCE
from .runs import (
    RunStats,
    find_runs,
    find_runs_bruteforce,
    fraction_to_decimal,
    run_listing_lines,
    run_stats,
)
from .words import Word, power, read_word_file, word_from_text

__all__ = ["Thresholds", "TableRow", "main"]

# Words longer than this are gated behind --large (analysis is
# minutes-scale rather than seconds-scale above it).
LARGE_WORD_THRESHOLD = 1_000_000

# Upper limit for certify-lower-bound materialization.
CERTIFY_LENGTH_CAP = 30_000_000

DEFAULT_ORACLE_CAP = 2000

RATIO_TOLERANCE = Fraction(1, 10_000)


class UsageError(Exception):
    """Bad invocation or refused input; reported on stderr, exit code 2."""


@dataclass(frozen=True)
class Thresholds:
    """Published bound constants; fixed unless explicitly overridden."""

    lower_bound_target: Fraction = Fraction("2.035")
    runs_bound: Fraction = Fraction("1.029")
    cubic_runs_bound: Fraction = Fraction("0.5")
    sigma_bound: Fraction = Fraction("4.1")
    sigma_cubic_bound: Fraction = Fraction("2.5")


@dataclass(frozen=True)
class TableRow:
    """One emitted table row; decimal cells are rendered from exact values."""

    i: int
    n: int
    rho: int
    rho_over_n: str
    sigma: str
    sigma_exact: Fraction
    sigma_over_n: str


def ratio_string(num: int | Fraction, den: int, digits: int) -> str:
    if den == 0:
        return "-"
    return fraction_to_decimal(Fraction(num, den), digits)


def sigma_cell_matches(exact: Fraction, published: str) -> bool:
    """Accept either half-up rounding or truncation of the exact value."""
    return published in (
        fraction_to_decimal(exact, 2),
        fraction_to_decimal(exact, 2, rounding="truncate"),
    )


def ratio_matches(exact: Fraction, published: str, tol: Fraction = RATIO_TOLERANCE) -> bool:
    return abs(exact - Fraction(published)) <= tol


def table_row(i: int, stats: RunStats) -> TableRow:
    return TableRow(
        i=i,
        n=stats.n,
        rho=stats.rho,
        rho_over_n=ratio_string(stats.rho, stats.n, 4),
        sigma=fraction_to_decimal(stats.sigma, 2),
        sigma_exact=stats.sigma,
        sigma_over_n=ratio_string(stats.sigma, stats.n, 4),
    )


# ---------------------------------------------------------------------------
# output emitters
# ---------------------------------------------------------------------------

def emit_markdown(headers: Sequence[str], rows: Sequence[Sequence[str]], out: TextIO) -> None:
    out.write("| " + " | ".join(headers) + " |\n")
    out.write("|" + "|".join(" --- " for _ in headers) + "|\n")
    for row in rows:
        out.write("| " + " | ".join(row) + " |\n")


def emit_csv(headers: Sequence[str], rows: Sequence[Sequence[str]], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)


def emit_table(fmt: str, headers: Sequence[str], rows: Sequence[Sequence[str]], out: TextIO) -> None:
    if fmt == "md":
        emit_markdown(headers, rows, out)
    elif fmt == "csv":
        emit_csv(headers, rows, out)
    elif fmt == "json":
        json.dump([dict(zip(headers, row)) for row in rows], out, indent=2)
        out.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------

def _literal_word(text: str) -> Word:
    for pos, ch in enumerate(text, start=1):
        if not 0x21 <= ord(ch) <= 0x7E:
            raise ValueError(f"literal word has non-printable character at position {pos}")
    return word_from_text(text, set(text))


def _family_member(index: int, spec_path: str | None, large: bool) -> tuple[Word, str]:
    if spec_path is None:
        name = "run-rich"
        expected = (
            MAIN_FAMILY_REFERENCE[index - 1].n
            if 1 <= index <= len(MAIN_FAMILY_REFERENCE)
            else None
        )
        if expected is not None and expected > LARGE_WORD_THRESHOLD and not large:
            raise UsageError(
                f"family member {index} has {expected:,} letters; pass --large to analyze it"
            )
        return run_rich_word(index), f"{name}:{index}"
    spec = load_family(spec_path)
    expected = predicted_length(spec, index)
    if expected > LARGE_WORD_THRESHOLD and not large:
        raise UsageError(
            f"family member {index} has {expected:,} letters; pass --large to analyze it"
        )
    return generate_member(spec, index), f"{spec.name}:{index}"


def resolve_word(arg: str, *, family_spec: str | None, large: bool) -> tuple[Word, str]:
    """Turn an input argument into a word.

    `family:N` picks member N of the built-in family, or of the file
    given with --family-spec. An existing path is read as a word file.
    Anything else without a path separator is taken as a literal word.
    """
    if arg.startswith("family:"):
        try:
            index = int(arg.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad family reference {arg!r}, expected family:<integer>") from None
        return _family_member(index, family_spec, large)
    if os.path.exists(arg):
        w = read_word_file(arg)
        if len(w) > LARGE_WORD_THRESHOLD and not large:
            raise UsageError(f"word file has {len(w):,} letters; pass --large to analyze it")
        return w, arg
    if os.sep in arg:
        raise OSError(f"no such file: {arg}")
    return _literal_word(arg), arg


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _parse_threshold_overrides(pairs: Sequence[str] | None) -> Thresholds:
    thresholds = Thresholds()
    if not pairs:
        return thresholds
    valid = {f.name for f in fields(Thresholds)}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or name not in valid:
            raise ValueError(
                f"bad threshold override {pair!r}; expected NAME=VALUE with NAME in "
                + ", ".join(sorted(valid))
            )
        thresholds = replace(thresholds, **{name: Fraction(value)})
    return thresholds


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    word, _ = _family_member(args.index, args.family_spec, args.large)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(word.text)
            fh.write("\n")
    else:
        sys.stdout.write(word.text)
        sys.stdout.write("\n")
    return 0


def _stats_cells(stats: RunStats) -> dict[str, str]:
    return {
        "n": str(stats.n),
        "rho": str(stats.rho),
        "rho_over_n": ratio_string(stats.rho, stats.n, 4),
        "sigma_exact": str(stats.sigma),
        "sigma": fraction_to_decimal(stats.sigma, 2),
        "sigma_over_n": ratio_string(stats.sigma, stats.n, 4),
        "rho_cubic": str(stats.rho_cubic),
        "sigma_cubic_exact": str(stats.sigma_cubic),
        "sigma_cubic": fraction_to_decimal(stats.sigma_cubic, 2),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    word, label = resolve_word(args.input, family_spec=args.family_spec, large=args.large)
    runs = find_runs(word)
    stats = run_stats(word, runs)
    cells = _stats_cells(stats)
    out = sys.stdout
    if args.format == "json":
        # counts as numbers, exact/rendered values as strings
        payload: dict = {"word": label, **cells}
        payload.update(n=stats.n, rho=stats.rho, rho_cubic=stats.rho_cubic)
        if args.runs:
            payload["runs"] = [
                [r.i, r.j, r.p, r.length, f"{r.exponent.numerator}/{r.exponent.denominator}"]
                for r in runs
            ]
        json.dump(payload, out, indent=2)
        out.write("\n")
        return 0
    if args.format == "md":
        emit_markdown(["field", "value"], [["word", label]] + [[k, v] for k, v in cells.items()], out)
    else:
        emit_csv(["word", *cells.keys()], [[label, *cells.values()]], out)
    if args.runs:
        out.write("\n")
        for line in run_listing_lines(runs):
            out.write(line)
            out.write("\n")
    return 0


def cmd_runs(args: argparse.Namespace) -> int:
    word, _ = resolve_word(args.input, family_spec=args.family_spec, large=args.large)
    runs = find_runs(word)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            for line in run_listing_lines(runs):
                fh.write(line)
                fh.write("\n")
    else:
        for line in run_listing_lines(runs):
            sys.stdout.write(line)
            sys.stdout.write("\n")
    return 0


def bound_checks(stats: RunStats, thresholds: Thresholds) -> dict[str, dict]:
    """Exact-rational instance checks of the published bounds."""
    n = stats.n
    checks = {
        "rho_le_runs_bound_n": (
            thresholds.runs_bound,
            Fraction(stats.rho) <= thresholds.runs_bound * n,
        ),
        "sigma_lt_sigma_bound_n": (
            thresholds.sigma_bound,
            stats.sigma < thresholds.sigma_bound * n,
        ),
        "rho_cubic_le_cubic_runs_bound_n": (
            thresholds.cubic_runs_bound,
            Fraction(stats.rho_cubic) <= thresholds.cubic_runs_bound * n,
        ),
        "sigma_cubic_lt_sigma_cubic_bound_n": (
            thresholds.sigma_cubic_bound,
            stats.sigma_cubic < thresholds.sigma_cubic_bound * n,
        ),
        "sigma_lt_3rho_plus_n": (None, stats.sigma < 3 * stats.rho + n),
    }
    return {
        name: {"limit": None if lim is None else str(lim), "ok": bool(ok)}
        for name, (lim, ok) in checks.items()
    }


def cmd_verify(args: argparse.Namespace) -> int:
    thresholds = _parse_threshold_overrides(args.threshold)
    word, label = resolve_word(args.input, family_spec=args.family_spec, large=args.large)
    runs = find_runs(word)
    stats = run_stats(word, runs)

    oracle: dict = {"cap": args.oracle_cap, "checked": False, "match": None}
    if len(word) <= args.oracle_cap:
        oracle["checked"] = True
        oracle["match"] = find_runs_bruteforce(word, cap=args.oracle_cap) == runs

    handle_report = verify_handle_properties(word, runs)
    bounds = bound_checks(stats, thresholds)

    ok = (
        (oracle["match"] is not False)
        and handle_report.all_ok
        and all(entry["ok"] for entry in bounds.values())
    )
    payload = {
        "word": label,
        "n": stats.n,
        "rho": stats.rho,
        "sigma_exact": str(stats.sigma),
        "oracle": oracle,
        "handles": handle_report.as_json_dict(),
        "handles_sum_bound_ok": handle_report.sum_bound_ok,
        "bounds": bounds,
        "pass": bool(ok),
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if ok else 1


def cmd_table3(args: argparse.Namespace) -> int:
    if not 1 <= args.max_i <= len(MAIN_FAMILY_REFERENCE):
        return _usage_error(f"--max-i must be in 1..{len(MAIN_FAMILY_REFERENCE)}, got {args.max_i}")
    if args.max_i > 8 and not args.large:
        return _usage_error("indices 9 and 10 are minutes-scale; pass --large to include them")
    rows: list[TableRow] = []
    mismatches: list[str] = []
    for ref in MAIN_FAMILY_REFERENCE[: args.max_i]:
        word = run_rich_word(ref.index)
        stats = run_stats(word, find_runs(word))
        row = table_row(ref.index, stats)
        rows.append(row)
        if stats.n != ref.n:
            mismatches.append(f"i={ref.index}: |w| computed {stats.n}, published {ref.n}")
        if not sigma_cell_matches(stats.sigma, ref.sigma):
            mismatches.append(
                f"i={ref.index}: sigma computed {row.sigma}, published {ref.sigma}"
            )
        if stats.n and not ratio_matches(Fraction(stats.sigma, stats.n), ref.sigma_over_n):
            mismatches.append(
                f"i={ref.index}: sigma/n computed {row.sigma_over_n}, published {ref.sigma_over_n}"
            )
    headers = ["i", "n", "rho", "rho_over_n", "sigma", "sigma_exact", "sigma_over_n"]
    cells = [
        [str(r.i), str(r.n), str(r.rho), r.rho_over_n, r.sigma, str(r.sigma_exact), r.sigma_over_n]
        for r in rows
    ]
    emit_table(args.format, headers, cells, sys.stdout)
    if mismatches:
        for line in mismatches:
            print(f"mismatch: {line}", file=sys.stderr)
        return 1
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    thresholds = _parse_threshold_overrides(args.threshold)
    target = thresholds.lower_bound_target
    if args.power < 1:
        return _usage_error(f"--power must be >= 1, got {args.power}")
    if not 1 <= args.index <= len(MAIN_FAMILY_REFERENCE):
        return _usage_error(f"--index must be in 1..{len(MAIN_FAMILY_REFERENCE)}, got {args.index}")
    base_n = MAIN_FAMILY_REFERENCE[args.index - 1].n
    total = base_n * args.power
    if total > CERTIFY_LENGTH_CAP:
        return _usage_error(
            f"word of {total:,} letters exceeds the certify cap of {CERTIFY_LENGTH_CAP:,}"
        )
    if total > LARGE_WORD_THRESHOLD and not args.large:
        return _usage_error(f"word of {total:,} letters is minutes-scale; pass --large")
    word = power(run_rich_word(args.index), args.power)
    stats = run_stats(word, find_runs(word))
    ratio = Fraction(stats.sigma, stats.n)
    verdict = ratio > target
    print(f"word: run-rich member {args.index} to the power {args.power}")
    print(f"n: {stats.n}")
    print(f"sigma: {stats.sigma}")
    print(f"sigma/n: {ratio} = {fraction_to_decimal(ratio, 6)} (6 decimals)")
    print(f"target: {target} = {fraction_to_decimal(target, 6)} (6 decimals)")
    print(f"verdict: {'PASS' if verdict else 'FAIL'} (exact comparison sigma/n > target)")
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_input_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="word file path, literal word, or family:<index>")
    sub.add_argument("--family-spec", metavar="FILE", help="family spec file backing family:<index>")
    sub.add_argument("--large", action="store_true",
                     help=f"allow words longer than {LARGE_WORD_THRESHOLD:,} letters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runexp",
        description="Enumerate runs (maximal repetitions) and verify exponent-sum facts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family word")
    p.add_argument("index", type=int, help="family member index")
    p.add_argument("--family-spec", metavar="FILE", help="family spec file (default: built-in family)")
    p.add_argument("--large", action="store_true",
                   help=f"allow words longer than {LARGE_WORD_THRESHOLD:,} letters")
    p.add_argument("-o", "--output", metavar="FILE", help="write the word here instead of stdout")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="run statistics for one word")
    _add_input_options(p)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--runs", action="store_true", help="also dump the run listing")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("runs", help="dump the run listing of one word")
    _add_input_options(p)
    p.add_argument("-o", "--output", metavar="FILE", help="write the listing here instead of stdout")
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("verify", help="oracle + handle + bound checks, JSON report")
    _add_input_options(p)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP, metavar="N",
                   help="run the brute-force comparison when n <= N (default %(default)s)")
    p.add_argument("--threshold", action="append", metavar="NAME=VALUE",
                   help="override a bound constant (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table3", help="reproduce the built-in family table")
    p.add_argument("--max-i", type=int, default=8, metavar="N", help="last index (default 8)")
    p.add_argument("--large", action="store_true", help="allow indices 9 and 10 (minutes)")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("certify-lower-bound",
                       help="exact check that sigma/n beats the target on a family word power")
    p.add_argument("--index", type=int, default=8, metavar="I", help="family index (default 8)")
    p.add_argument("--power", type=int, default=1, metavar="K", help="repeat count (default 1)")
    p.add_argument("--large", action="store_true",
                   help=f"allow words longer than {LARGE_WORD_THRESHOLD:,} letters")
    p.add_argument("--threshold", action="append", metavar="NAME=VALUE",
                   help="override a bound constant, e.g. lower_bound_target=2.03 (repeatable)")
    p.set_defaults(func=cmd_certify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
