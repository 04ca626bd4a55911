"""Covering sets: construction, expansion into represented integers,
verification against a complexity table, and the covering file format."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .defect import Threshold, format_fraction, parse_fraction
from .errors import ContractError, ParseError, RangeError
from .pair import LowDefectPair, constant_pair
from .sexpr import Atom, Reader, SList, expect_int, quote
from .table import ComplexityTable, build_table, complexity_of, defect_of, enumerate_leaders_below
from .tree import canonicalize, to_sexpr, tree_from_sexpr_value, assign_postorder

PatternEntry = Union[int, str]
# Tables built on the fly to validate loaded files stop here.
AUTO_TABLE_LIMIT = 1 << 22


@dataclass(frozen=True)
class CoveringSet:
    """Finite family of pairs, kept in canonical order.

    ``patterns`` optionally records, per pair, the substitution pattern that
    produced it from its source pair.
    """

    pairs: tuple[LowDefectPair, ...] = ()
    threshold: Optional[Threshold] = None
    provenance: str = ""
    patterns: Optional[tuple[Optional[tuple[PatternEntry, ...]], ...]] = None

    def __post_init__(self) -> None:
        pats = self.patterns if self.patterns is not None else (None,) * len(self.pairs)
        if len(pats) != len(self.pairs):
            raise ValueError("patterns must parallel pairs")
        rows = [(LowDefectPair(canonicalize(p.tree), p.C), pat) for p, pat in zip(self.pairs, pats)]
        rows.sort(key=lambda r: r[0].key())
        object.__setattr__(self, "pairs", tuple(r[0] for r in rows))
        has_pats = self.patterns is not None and any(r[1] is not None for r in rows)
        object.__setattr__(self, "patterns", tuple(r[1] for r in rows) if has_pats else None)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class VerificationReport:
    checked_limit: int
    missing: list[int] = field(default_factory=list)
    extraneous: list[int] = field(default_factory=list)
    inefficient: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.missing or self.extraneous or self.inefficient)

    def summary(self) -> str:
        def head(xs: list) -> str:
            shown = ", ".join(str(x) for x in xs[:10])
            return shown + (", ..." if len(xs) > 10 else "")

        lines = [f"checked up to {self.checked_limit}: {'PASS' if self.passed else 'FAIL'}"]
        for name in ("missing", "extraneous", "inefficient"):
            xs = getattr(self, name)
            lines.append(f"  {name}: {len(xs)}" + (f" [{head(xs)}]" if xs else ""))
        return "\n".join(lines)


def base_covering(t: Threshold, table: ComplexityTable) -> CoveringSet:
    """Constant pairs ``(n, ||n||)`` for every admitted leader in the table.

    Only meaningful below 1, where the admitted leaders form a finite set.
    """
    if t.value >= 1:
        raise ContractError("base coverings need a threshold below 1")
    pairs = tuple(constant_pair(n, complexity_of(n, table)) for n in enumerate_leaders_below(t, table))
    return CoveringSet(pairs, t, f"base enumeration, empirical up to limit {table.limit}")


def expand(cov: CoveringSet, limit: int) -> list[tuple[int, int]]:
    """All ``f(3^k1..3^kr) * 3^k`` up to ``limit``, each with its least
    supposed complexity ``C + 3*(k1 + ... + kr + k)``."""
    best: dict[int, int] = {}
    for p in cov.pairs:
        poly = p.poly
        variables = poly.variables
        r = len(variables)
        point = {v: 1 for v in variables}

        def dfs(i: int, spent: int) -> None:
            if i == r:
                n, s = poly.evaluate(point), p.C + 3 * spent
                while n <= limit:
                    if s < best.get(n, s + 1):
                        best[n] = s
                    n *= 3
                    s += 3
                return
            v = variables[i]
            k = 0
            while True:
                point[v] = 3**k
                # Later variables sit at 3^0, the smallest value they can take.
                if poly.evaluate(point) > limit:
                    break
                dfs(i + 1, spent + k)
                k += 1
            point[v] = 1

        dfs(0, 0)
    return sorted(best.items())


def _check_limit(limit: int, table: ComplexityTable) -> None:
    if limit > table.limit:
        raise RangeError(f"limit {limit} exceeds table limit {table.limit}")


def verify_exact_representation(
    cov: CoveringSet, t: Threshold, limit: int, table: ComplexityTable
) -> VerificationReport:
    """Compare the numbers 3-represented by ``cov`` with ``{n : defect(n) admitted by t}``."""
    _check_limit(limit, table)
    represented = dict(expand(cov, limit))
    extraneous = [n for n in represented if not t.admits(defect_of(n, table))]
    missing = [n for n in range(1, limit + 1) if n not in represented and t.admits(defect_of(n, table))]
    return VerificationReport(limit, missing=missing, extraneous=extraneous)


def verify_efficient_covering(
    cov: CoveringSet, t: Threshold, limit: int, table: ComplexityTable
) -> VerificationReport:
    """Every admitted leader must be represented at its true complexity."""
    _check_limit(limit, table)
    represented = dict(expand(cov, limit))
    missing, inefficient = [], []
    for n in enumerate_leaders_below(t, ComplexityTable(limit, table.entries)):
        s = represented.get(n)
        if s is None:
            missing.append(n)
        elif s != complexity_of(n, table):
            inefficient.append((n, s))
    return VerificationReport(limit, missing=missing, inefficient=inefficient)


# -- file format -------------------------------------------------------------


def _pattern_sexpr(pat: Sequence[PatternEntry]) -> str:
    return "(pattern" + "".join(f" {e}" for e in pat) + ")"


def dumps_covering(cov: CoveringSet) -> str:
    lines = ["(cover"]
    if cov.threshold is not None:
        lines.append(f"  (threshold {quote(format_fraction(cov.threshold.value))})")
        lines.append(f"  (mode {cov.threshold.mode})")
    if cov.provenance:
        lines.append(f"  (provenance {quote(cov.provenance)})")
    pats = cov.patterns or (None,) * len(cov.pairs)
    for p, pat in zip(cov.pairs, pats):
        extra = "" if pat is None else " " + _pattern_sexpr(pat)
        lines.append(f"  (pair (C {p.C}) (tree {to_sexpr(p.tree)}){extra})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def _one_atom(reader: Reader, item: SList, what: str) -> Atom:
    if len(item.items) != 2 or not isinstance(item.items[1], Atom):
        raise reader.error(f"expected ({what} VALUE)", item.pos)
    return item.items[1]


def _parse_pair(reader: Reader, item: SList) -> tuple[LowDefectPair, Optional[tuple]]:
    C = tree = pat = None
    for field_ in item.items[1:]:
        head = field_.head() if isinstance(field_, SList) else None
        if head == "C" and C is None:
            C = expect_int(reader, _one_atom(reader, field_, "C"), "base complexity", minimum=1)
        elif head == "tree" and tree is None:
            if len(field_.items) != 2:
                raise reader.error("expected (tree (node ...))", field_.pos)
            tree = assign_postorder(tree_from_sexpr_value(reader, field_.items[1]))
        elif head == "pattern" and pat is None:
            entries: list[PatternEntry] = []
            for a in field_.items[1:]:
                if isinstance(a, Atom) and not a.quoted and a.text == "*":
                    entries.append("*")
                else:
                    entries.append(expect_int(reader, a, "pattern entry", minimum=0))
            pat = tuple(entries)
        else:
            raise reader.error(f"unexpected item in pair: {head or '?'}", field_.pos)
    if C is None or tree is None:
        raise reader.error("pair needs (C ...) and (tree ...)", item.pos)
    return LowDefectPair(tree, C), pat


def loads_covering(text: str, table: ComplexityTable | None = None) -> CoveringSet:
    """Parse a covering file; rejects pairs whose C is below the tree complexity.

    Without ``table``, one is built up to the largest label in the file.
    """
    reader = Reader(text)
    top = reader.read_only()
    if not isinstance(top, SList) or top.head() != "cover":
        raise reader.error("expected (cover ...)", top.pos)
    value = mode = None
    provenance = ""
    rows = []
    positions = []
    for item in top.items[1:]:
        head = item.head() if isinstance(item, SList) else None
        if head == "threshold" and value is None:
            atom = _one_atom(reader, item, "threshold")
            try:
                value = parse_fraction(atom.text)
            except ParseError:
                raise reader.error(f"invalid threshold {atom.text!r}", atom.pos) from None
        elif head == "mode" and mode is None:
            atom = _one_atom(reader, item, "mode")
            if atom.text not in ("strict", "closed"):
                raise reader.error(f"mode must be strict or closed, got {atom.text!r}", atom.pos)
            mode = atom.text
        elif head == "provenance":
            provenance = _one_atom(reader, item, "provenance").text
        elif head == "pair":
            rows.append(_parse_pair(reader, item))
            positions.append(item.pos)
        else:
            raise reader.error(f"unknown item {head or '?'}", item.pos)
    if mode is not None and value is None:
        raise reader.error("mode given without threshold", top.pos)
    threshold = None if value is None else Threshold(value, mode == "closed")

    if rows:
        labels = [x for p, _ in rows for x in [v.label for v in p.tree.vertices()] + list(p.tree.edges())]
        if table is None or max(labels) > table.limit:
            if max(labels) > AUTO_TABLE_LIMIT:
                raise RangeError("labels too large to validate; supply a larger table")
            table = build_table(max(labels))
        for (p, _), pos in zip(rows, positions):
            try:
                p.validate(table)
            except ContractError as exc:
                raise ParseError(f"invalid pair: {exc}", pos, text) from None

    pats = tuple(pat for _, pat in rows)
    return CoveringSet(
        tuple(p for p, _ in rows),
        threshold,
        provenance,
        pats if any(x is not None for x in pats) else None,
    )


def load_covering(path: str | os.PathLike, table: ComplexityTable | None = None) -> CoveringSet:
    with open(path, encoding="utf-8") as fh:
        return loads_covering(fh.read(), table)


def save_covering(cov: CoveringSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_covering(cov))
