"""Command-line front end.

    lowersets count --dim 3 --size 5
    lowersets series --family euler --max 20
    lowersets bounds --dim 4 --size 8 --format csv
    lowersets enumerate --dim 3 --size 4 --format partition
    lowersets verify --suite discrepancy

Payloads go to standard output (or --output); logs and errors go to
standard error, errors as one JSON line.  Exit codes: 0 success, 1 suite
failure or bound violation, 2 invalid arguments, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from .bounds import BoundViolation, bound_report
from .counting import FAMILIES, METHODS, BudgetExceeded, budget_from_env, count_exact, enumerate_lower_sets, series_expand
from .lattice import to_partition_array
from .verify import SUITES, SuiteLimits, run_suite

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

MAX_DIM = 10**12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _dim(text: str) -> int:
    v = _nonneg(text)
    if not 1 <= v <= MAX_DIM:
        raise argparse.ArgumentTypeError(f"dimension must lie in 1..{MAX_DIM}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lowersets", description="Exact counts and bounds for multidimensional partitions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--budget", type=_nonneg, default=None, help="work budget in nodes (env LOWERSET_BUDGET)")
        sp.add_argument("-o", "--output", default=None, help="write payload here instead of standard output")

    c = sub.add_parser("count", help="exact p_d(n)")
    c.add_argument("--dim", type=_dim, required=True)
    c.add_argument("--size", type=_nonneg, required=True)
    c.add_argument("--method", choices=METHODS, default="auto")
    c.add_argument("--workers", type=_nonneg, default=1, help="processes for --method enum")
    common(c)

    s = sub.add_parser("series", help="generating-function coefficients")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--dim", type=_dim, default=None)
    s.add_argument("--max", type=_nonneg, required=True, dest="max_n")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    common(s)

    b = sub.add_parser("bounds", help="exact count with every applicable bound")
    b.add_argument("--dim", type=_dim, required=True)
    b.add_argument("--size", type=_nonneg, required=True)
    b.add_argument("--format", choices=("json", "csv"), default="json")
    common(b)

    e = sub.add_parser("enumerate", help="stream every lower set of a given size")
    e.add_argument("--dim", type=_dim, required=True)
    e.add_argument("--size", type=_nonneg, required=True)
    e.add_argument("--format", choices=("points", "partition"), default="points")
    common(e)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--max-dim", type=_nonneg, default=None)
    v.add_argument("--max-size", type=_nonneg, default=None)
    v.add_argument("--seed", type=_nonneg, default=0)
    v.add_argument("--samples", type=_nonneg, default=None)
    common(v)
    return p


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _partition_line(S) -> str:
    arr = to_partition_array(S)
    items = sorted(arr.entries.items())
    return _dumps({",".join(map(str, idx)): h for idx, h in items})


def _run(args, out) -> int:
    budget = args.budget if args.budget is not None else budget_from_env()

    if args.command == "count":
        res = count_exact(args.dim, args.size, args.method, budget, workers=max(args.workers, 1))
        out.write(_dumps(res.to_json()) + "\n")
        return EXIT_OK

    if args.command == "series":
        table = series_expand(args.family, args.dim, args.max_n)
        out.write(table.to_csv() if args.format == "csv" else _dumps(table.to_json()) + "\n")
        return EXIT_OK

    if args.command == "bounds":
        if args.dim < 2:
            raise UsageError("bounds need --dim >= 2")
        report = bound_report(args.dim, args.size, budget)
        if args.format == "json":
            out.write(_dumps(report.to_json()) + "\n")
        else:
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows(report.csv_rows())
            out.write(buf.getvalue())
        return EXIT_OK

    if args.command == "enumerate":
        first = True
        for S in enumerate_lower_sets(args.dim, args.size, budget):
            if args.format == "points":
                if not first:
                    out.write("\n")
                out.write(S.to_text())
            else:
                out.write(_partition_line(S) + "\n")
            first = False
        return EXIT_OK

    limits = SuiteLimits(args.max_dim, args.max_size, budget, args.seed, args.samples)
    res = run_suite(args.suite, limits)
    out.write(_dumps(res.to_json()) + "\n")
    return EXIT_OK if res.ok else EXIT_FAILURE


def _error(kind: str, message: str) -> None:
    sys.stderr.write(_dumps({"error": kind, "message": message}) + "\n")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _error("usage", str(exc))
        return EXIT_USAGE
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        return _run(args, out)
    except UsageError as exc:
        _error("usage", str(exc))
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _error("budget", str(exc))
        return EXIT_BUDGET
    except BoundViolation as exc:
        _error("bound-violation", str(exc))
        return EXIT_FAILURE
    except ValueError as exc:
        _error("invalid", str(exc))
        return EXIT_USAGE
    finally:
        if out is not sys.stdout:
            out.close()
