"""Command-line front end for character tables, estimates, sweeps and fits.

Subcommands
-----------
 * ``chars    --modulus K``                               character table
 * ``estimate --n N --s S [--modulus K --label L]``       one estimate row
 * ``sweep    --n N --s-min A --s-max B [--modulus ...]`` -ln(error) series
 * ``slopes   --n-min A --n-max B --s-min C --s-max D``   per-n fit lines
 * ``dtable   --n-list 3,...,8 --s 50 --moduli 4,5,8,9``  error differences
 * ``selftest``                                           built-in suites

Data goes to stdout (or ``--output FILE``) as CSV by default or JSON with
``--format json`` carrying identical values; diagnostics and warnings go to
stderr.  Exit codes: 0 success, 1 domain error, 2 argument error.  All
numeric output is plain decimal, never locale-dependent.  ``--workers``
(default from the PRIMEREC_WORKERS environment variable) parallelises
sweeps without changing their output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import analysis, recursion, selftest
from .characters import character_table_rows, enumerate_characters
from .errors import PrimerecError
from .mpnum import format_decimal
from .primes import is_prime

WORKERS_ENV = "PRIMEREC_WORKERS"


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _int_list(text: str):
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primerec",
        description="Prime recursion through Dirichlet L-series: estimates, sweeps and tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--output", "-o", help="write data to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("chars", help="emit the character table for a modulus")
    p.add_argument("--modulus", type=int, required=True)
    add_io(p)

    p = sub.add_parser("estimate", help="evaluate one (n, s, character) estimate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--modulus", type=int, default=1)
    p.add_argument("--label", type=int, default=1)
    p.add_argument("--precision", type=int, default=None, help="working precision override in bits")
    add_io(p)

    p = sub.add_parser("sweep", help="-ln(error) series over a range of s")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s-min", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--modulus", type=int, default=1)
    p.add_argument("--label", type=int, default=1)
    p.add_argument("--workers", type=int, default=_default_workers())
    add_io(p)

    p = sub.add_parser("slopes", help="best-fit slope per n over a common s range")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--s-min", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--workers", type=int, default=_default_workers())
    add_io(p)

    p = sub.add_parser("dtable", help="signed error-difference table at fixed s")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--moduli", type=_int_list, required=True)
    p.add_argument("--workers", type=int, default=_default_workers())
    add_io(p)

    sub.add_parser("selftest", help="run the built-in verification suites")

    return parser


def _emit(args, header, rows, out_stream) -> None:
    if args.format == "json":
        payload = {"schema": list(header), "rows": [dict(zip(header, row)) for row in rows]}
        out_stream.write(json.dumps(payload, indent=2))
        out_stream.write("\n")
    else:
        writer = csv.writer(out_stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_chars(args, out):
    group = enumerate_characters(args.modulus)
    _emit(args, ("label", "n", "kind", "a", "m"), character_table_rows(group), out)
    return 0


def _cmd_estimate(args, out):
    chi = enumerate_characters(args.modulus).by_label(args.label)
    res = recursion.estimate(args.n, args.s, chi, prec_bits=args.precision)
    if res.warning:
        print(f"warning: {res.warning}", file=sys.stderr)
    digits = analysis.FLOAT_DIGITS
    header = (
        "n", "s", "modulus", "label", "prec_bits", "target", "rounded",
        "rounded_is_prime", "estimate", "error", "margin", "status",
    )
    row = (
        res.n, res.s, res.modulus, res.label, res.prec_bits, res.target, res.rounded,
        int(is_prime(res.rounded)) if res.rounded >= 1 else 0,
        format_decimal(res.estimate, digits),
        format_decimal(res.error, digits),
        format_decimal(res.margin, digits),
        "char-zero-at-target" if res.warning else "",
    )
    _emit(args, header, [row], out)
    return 0


def _cmd_sweep(args, out):
    chi = enumerate_characters(args.modulus).by_label(args.label)
    series = analysis.neg_log_series(
        args.n, args.s_min, args.s_max, chi, workers=args.workers
    )
    if series.n_excluded:
        print(
            f"warning: {series.n_excluded} zero-error points excluded from the series",
            file=sys.stderr,
        )
    header = ("n", "s", "modulus", "label", "neg_log_error")
    rows = [
        (series.n, p.s, series.modulus, series.label, format_decimal(p.y, analysis.FLOAT_DIGITS))
        for p in series.points
    ]
    _emit(args, header, rows, out)
    return 0


def _cmd_slopes(args, out):
    fits = analysis.slope_series(
        args.n_min, args.n_max, args.s_min, args.s_max, workers=args.workers
    )
    fmt = analysis.fmt_float
    header = ("n", "a", "b", "r", "s_min", "s_max", "n_points", "n_excluded")
    rows = [
        (n, fmt(f.a), fmt(f.b), fmt(f.r), f.s_min, f.s_max, f.n_points, f.n_excluded)
        for n, f in fits
    ]
    _emit(args, header, rows, out)
    return 0


def _cmd_dtable(args, out):
    table = analysis.d_table(args.n_list, args.s, args.moduli, workers=args.workers)
    header = ("modulus", "label", "n", "d_value", "status")
    rows = []
    for row in table.rows:
        for cell in row.cells:
            # "principal" is informational; only degenerate cells warn
            if "char-zero-at-target" in cell.status:
                print(
                    f"warning: modulus {row.modulus} label {row.label} n={cell.n}: {cell.status}",
                    file=sys.stderr,
                )
            rows.append(
                (
                    row.modulus,
                    row.label,
                    cell.n,
                    format_decimal(cell.value, analysis.FLOAT_DIGITS),
                    cell.status,
                )
            )
    _emit(args, header, rows, out)
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "selftest":
        failures = selftest.run_selftest()
        return 0 if failures == 0 else 1

    handler = {
        "chars": _cmd_chars,
        "estimate": _cmd_estimate,
        "sweep": _cmd_sweep,
        "slopes": _cmd_slopes,
        "dtable": _cmd_dtable,
    }[args.command]

    buf = io.StringIO()
    try:
        code = handler(args, buf)
    except PrimerecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
