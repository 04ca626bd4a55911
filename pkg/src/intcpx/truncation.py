"""Truncating low-defect pairs to a defect threshold.

A substitution pattern is a tuple over nonnegative integers and ``STAR``;
position ``i`` refers to variable ``x_{i+1}`` of the pair it applies to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .covering import CoveringSet
from .defect import Ordering, Threshold, compare
from .errors import ContractError, DomainError, RangeError
from .pair import LowDefectPair, pair_defect, point_defect
from .tree import Node, parent_map, renumber

STAR = "*"
Pattern = tuple[Union[int, str], ...]


@dataclass(frozen=True)
class TruncationResult:
    patterns: tuple[Pattern, ...]
    pairs: tuple[LowDefectPair, ...]
    threshold: Threshold

    def __iter__(self):
        return iter(zip(self.patterns, self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)


def format_pattern(pat: Pattern) -> str:
    return "(" + ",".join(str(e) for e in pat) + ")"


def _fix_leaf(tree: Node, var: int, k: int) -> Node:
    """Replace the leaf carrying ``var`` by ``3**k``, folding it into its parent's label."""

    def walk(node: Node) -> Node:
        kids = []
        factor = 1
        for edge, child in node.children:
            if child.var == var:
                if child.children:
                    raise ContractError(f"x{var} is not minimal in the nesting order")
                factor *= child.label * 3**k + edge
            else:
                kids.append((edge, walk(child)))
        return Node(node.label * factor, tuple(kids), node.var)

    return walk(tree)


def _minimal_variables(tree: Node) -> list[int]:
    return sorted(v.var for v in tree.vertices() if v.var is not None and v.is_leaf)


def _substitute_raw(p: LowDefectPair, fixed: dict[int, int]) -> tuple[LowDefectPair, dict[int, int]]:
    tree = p.tree
    todo = dict(fixed)
    while todo:
        leaves = [v for v in _minimal_variables(tree) if v in todo]
        if not leaves:
            raise ContractError("fixed variables are not downward closed in the nesting order")
        for v in leaves:
            tree = _fix_leaf(tree, v, todo.pop(v))
    tree, mapping = renumber(tree)
    return LowDefectPair(tree, p.C + 3 * sum(fixed.values())), mapping


def direct_truncate(p: LowDefectPair, i: int, k: int) -> LowDefectPair:
    """Substitute ``3**k`` for the minimal variable ``x_i``; base complexity grows by ``3k``."""
    if not 1 <= i <= p.degree:
        raise RangeError(f"variable x{i} does not exist in a pair of degree {p.degree}")
    if k < 0:
        raise DomainError("exponent must be nonnegative")
    if i not in _minimal_variables(p.tree):
        raise ContractError(f"x{i} is not minimal in the nesting order")
    return _substitute_raw(p, {i: k})[0]


def _check_pattern(p: LowDefectPair, pat: Sequence[int | str]) -> dict[int, int]:
    if len(pat) != p.degree:
        raise RangeError(f"pattern of length {len(pat)} for a pair of degree {p.degree}")
    fixed = {}
    for i, e in enumerate(pat, start=1):
        if e == STAR:
            continue
        if not isinstance(e, int) or e < 0:
            raise DomainError(f"pattern entries must be nonnegative integers or '*', got {e!r}")
        fixed[i] = e
    parents = parent_map(p.tree)
    for v, par in parents.items():
        if par in fixed and v not in fixed:
            raise ContractError(f"fixing x{par} requires fixing x{v} below it")
    return fixed


def substitute(p: LowDefectPair, pat: Sequence[int | str]) -> LowDefectPair:
    """3-substitute a pattern whose fixed positions are downward closed."""
    return _substitute_raw(p, _check_pattern(p, pat))[0]


def pattern_contains(pat: Sequence[int | str], point: Sequence[int]) -> bool:
    return len(pat) == len(point) and all(e == STAR or e == x for e, x in zip(pat, point))


def pattern_members(pat: Sequence[int | str], bound: int) -> list[tuple[int, ...]]:
    """Points of the pattern's set inside the box ``[0, bound]^r``."""
    axes = []
    for e in pat:
        if e == STAR:
            axes.append(range(bound + 1))
        elif e <= bound:
            axes.append((e,))
        else:
            return []
    return list(itertools.product(*axes))


def find_K(p: LowDefectPair, t: Threshold) -> int:
    """Smallest ``K`` whose probe (``K+1`` on minimal variables, 0 elsewhere)
    has a supposed defect the threshold rejects."""
    if p.degree == 0:
        raise ContractError("find_K needs a pair of positive degree")
    if compare(pair_defect(p), t.value) is not Ordering.GREATER:
        raise ContractError("threshold must lie below the pair defect")
    minimal = set(_minimal_variables(p.tree))
    K = 0
    while True:
        probe = [K + 1 if v in minimal else 0 for v in range(1, p.degree + 1)]
        if not t.admits(point_defect(p, probe)):
            return K
        K += 1


def _pattern_key(pat: Pattern) -> tuple:
    return tuple((1, 0) if e == STAR else (0, e) for e in pat)


def _truncate(p: LowDefectPair, t: Threshold) -> dict[Pattern, LowDefectPair]:
    d = pair_defect(p)
    if p.degree == 0:
        return {(): p} if t.admits(d) else {}
    if compare(d, t.value) is not Ordering.GREATER:
        return {(STAR,) * p.degree: p}
    K = find_K(p, t)
    out: dict[Pattern, LowDefectPair] = {}
    for i in _minimal_variables(p.tree):
        for k in range(K + 1):
            sub, mapping = _substitute_raw(p, {i: k})
            back = {new: old for old, new in mapping.items()}
            for pat, q in _truncate(sub, t).items():
                full: list[int | str] = [STAR] * p.degree
                full[i - 1] = k
                for j, e in enumerate(pat, start=1):
                    full[back[j] - 1] = e
                out.setdefault(tuple(full), q)
    return out


def truncate_pair(p: LowDefectPair, t: Threshold) -> TruncationResult:
    """Replace ``p`` by finitely many substitutions whose points are exactly
    those where the supposed defect is admitted by ``t``."""
    found = _truncate(p, t)
    order = sorted(found, key=_pattern_key)
    return TruncationResult(tuple(order), tuple(found[q] for q in order), t)


def truncate_covering(cov: CoveringSet, t: Threshold) -> CoveringSet:
    seen: dict[tuple[bytes, int], tuple[LowDefectPair, Pattern]] = {}
    for p in cov.pairs:
        for pat, q in truncate_pair(p, t):
            seen.setdefault(q.key(), (q, pat))
    note = f"truncated to {t}"
    provenance = f"{cov.provenance}; {note}" if cov.provenance else note
    entries = list(seen.values())
    return CoveringSet(
        tuple(q for q, _ in entries),
        t,
        provenance,
        tuple(pat for _, pat in entries),
    )
