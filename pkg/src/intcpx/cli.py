"""Command-line front end.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or parse
error, 3 range or resource error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .covering import (
    AUTO_TABLE_LIMIT,
    CoveringSet,
    dumps_covering,
    expand,
    load_covering,
    verify_efficient_covering,
    verify_exact_representation,
)
from .defect import parse_threshold
from .errors import BuildError, IntCpxError, RangeError, ResourceError
from .expr import format_expression, parse_expression
from .pair import pair_defect
from .poly import absolute_base_complexity, polynomial_of
from .table import (
    ComplexityTable,
    build_table,
    complexity_of,
    defect_of,
    enumerate_leaders_below,
    load_table,
    save_table,
)
from .tree import canonical_form, renumber, to_sexpr, tree_of
from .truncation import format_pattern, truncate_covering

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RANGE = 0, 1, 2, 3


def _table(args: argparse.Namespace, need: int) -> ComplexityTable:
    """Load ``--table`` (failing if it is too small) or build one up to ``need``."""
    if getattr(args, "table", None):
        table = load_table(args.table)
        if need > table.limit:
            raise RangeError(f"query {need} exceeds table limit {table.limit}")
        return table
    if need > AUTO_TABLE_LIMIT:
        raise RangeError(f"query {need} needs a prebuilt table (--table)")
    return build_table(max(need, 1))


def cmd_table_build(args: argparse.Namespace) -> int:
    table = build_table(args.limit)
    save_table(table, args.out)
    print(f"wrote complexities of 1..{table.limit} to {args.out}")
    return EXIT_OK


def cmd_cpx(args: argparse.Namespace) -> int:
    print(complexity_of(args.n, _table(args, args.n)))
    return EXIT_OK


def cmd_defect(args: argparse.Namespace) -> int:
    d = defect_of(args.n, _table(args, args.n))
    print(f"{d.exact()}\t{d.to_decimal(args.digits)}")
    return EXIT_OK


def cmd_leaders(args: argparse.Namespace) -> int:
    t = parse_threshold(args.below, args.closed)
    table = _table(args, args.limit)
    scope = ComplexityTable(args.limit, table.entries)
    for n in enumerate_leaders_below(t, scope):
        d = defect_of(n, table)
        print(f"{n}\t{d.m}\t{d.to_decimal(args.digits)}")
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    expr = parse_expression(args.expr)
    tree = tree_of(expr)
    print(f"expression: {format_expression(expr)}")
    print(f"tree: {to_sexpr(tree, canonical=False)}")
    print(f"polynomial: {polynomial_of(tree)}")
    return EXIT_OK


def cmd_canon(args: argparse.Namespace) -> int:
    print(canonical_form(tree_of(parse_expression(args.expr))).decode())
    return EXIT_OK


def cmd_polycpx(args: argparse.Namespace) -> int:
    poly = polynomial_of(renumber(tree_of(parse_expression(args.expr)))[0])
    table = _table(args, max(poly.terms.values()))
    print(absolute_base_complexity(poly, table))
    return EXIT_OK


def cmd_truncate(args: argparse.Namespace) -> int:
    t = parse_threshold(args.threshold, args.closed)
    cov = load_covering(args.cover, load_table(args.table) if args.table else None)
    out = truncate_covering(cov, t)
    text = dumps_covering(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        pats = out.patterns or (None,) * len(out.pairs)
        for p, pat in zip(out.pairs, pats):
            tag = "" if pat is None else f"{format_pattern(pat)}\t"
            print(f"{tag}{p.poly}\tC={p.C}\tdefect={pair_defect(p).to_decimal(4)}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    table = _table(args, args.limit) if args.table else None
    cov = load_covering(args.cover, table)
    for n, s in expand(cov, args.limit):
        suffix = f"\t{complexity_of(n, table)}" if table is not None else ""
        print(f"{n}\t{s}{suffix}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    t = parse_threshold(args.threshold, args.closed)
    table = _table(args, args.limit)
    cov: CoveringSet = load_covering(args.cover, table)
    check = verify_efficient_covering if args.efficient else verify_exact_representation
    report = check(cov, t, args.limit, table)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intcpx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", help="complexity table files")
    tsub = table.add_subparsers(dest="table_command", required=True)
    tb = tsub.add_parser("build", help="build and save a table")
    tb.add_argument("--limit", type=_positive, required=True)
    tb.add_argument("--out", required=True)
    tb.set_defaults(func=cmd_table_build)

    for name, func, helptext in (
        ("cpx", cmd_cpx, "complexity of N"),
        ("defect", cmd_defect, "exact and decimal defect of N"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("n", type=_positive)
        p.add_argument("--table")
        if name == "defect":
            p.add_argument("--digits", type=int, default=6)
        p.set_defaults(func=func)

    p = sub.add_parser("leaders", help="leaders whose defect lies below a threshold")
    p.add_argument("--below", required=True)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--table")
    p.add_argument("--digits", type=int, default=6)
    p.set_defaults(func=cmd_leaders)

    for name, func, helptext in (
        ("parse", cmd_parse, "parse an expression; print its tree and polynomial"),
        ("canon", cmd_canon, "canonical tree s-expression of an expression"),
        ("polycpx", cmd_polycpx, "absolute base complexity of an expression's polynomial"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("expr")
        if name == "polycpx":
            p.add_argument("--table")
        p.set_defaults(func=func)

    p = sub.add_parser("truncate", help="truncate a covering file to a threshold")
    p.add_argument("--cover", required=True)
    p.add_argument("--threshold", required=True)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--out")
    p.add_argument("--table")
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("expand", help="numbers 3-represented by a covering")
    p.add_argument("--cover", required=True)
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--table")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="check a covering against the complexity table")
    p.add_argument("--cover", required=True)
    p.add_argument("--threshold", required=True)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--table")
    p.add_argument("--efficient", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (RangeError, ResourceError, BuildError) as exc:
        print(f"intcpx: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (IntCpxError, OSError, ValueError) as exc:
        print(f"intcpx: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
