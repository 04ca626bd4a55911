"""Multilinear polynomials with nonnegative coefficients, and the structure
theory of low-defect polynomials: keys, anti-keys, the nesting order, and
recovery of every tree that yields a given polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, NotLowDefectError, ResourceError
from .table import ComplexityTable
from .tree import Node, tree_complexity

Monomial = frozenset


class Polynomial:
    """Sparse multilinear polynomial: a map from variable sets to coefficients."""

    __slots__ = ("terms", "variables")

    def __init__(self, terms: Mapping[Iterable[int], int], variables: Iterable[int] | None = None):
        clean: dict[frozenset[int], int] = {}
        for mono, coeff in terms.items():
            if coeff:
                key = frozenset(mono)
                clean[key] = clean.get(key, 0) + coeff
        self.terms = {k: v for k, v in clean.items() if v}
        if variables is None:
            variables = set().union(*self.terms) if self.terms else ()
        self.variables: tuple[int, ...] = tuple(sorted(variables))

    @classmethod
    def constant(cls, value: int) -> Polynomial:
        return cls({frozenset(): value})

    @property
    def degree(self) -> int:
        return len(self.variables)

    @property
    def constant_term(self) -> int:
        return self.terms.get(frozenset(), 0)

    @property
    def leading_coefficient(self) -> int:
        return self.terms.get(frozenset(self.variables), 0)

    def coefficient(self, mono: Iterable[int]) -> int:
        return self.terms.get(frozenset(mono), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.variables == other.variables

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.variables))

    def __mul__(self, other: Polynomial) -> Polynomial:
        if set(self.variables) & set(other.variables):
            raise DomainError("multilinear product needs disjoint variables")
        out: dict[frozenset[int], int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[m1 | m2] = out.get(m1 | m2, 0) + c1 * c2
        return Polynomial(out, self.variables + other.variables)

    def evaluate(self, point: Mapping[int, int]) -> int:
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for v in mono:
                term *= point[v]
            total += term
        return total

    def restrict(self, keep: Iterable[int]) -> Polynomial:
        """Set every variable outside ``keep`` to zero."""
        keep = frozenset(keep)
        return Polynomial({m: c for m, c in self.terms.items() if m <= keep}, keep & set(self.variables))

    def content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-len(m), sorted(m))):
            coeff = self.terms[mono]
            vars_ = "".join(f"x{v}" for v in sorted(mono))
            parts.append(vars_ if coeff == 1 and vars_ else f"{coeff}{vars_}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


LowDefectPolynomial = Polynomial


def polynomial_of(tree: Node) -> Polynomial:
    """Expand a tree: one monomial per rooted subtree, with coefficient the
    product of its vertex labels times the labels of the edges leaving it."""
    return Polynomial(dict(_rooted_subtrees(tree)), tree.variables())


def _rooted_subtrees(node: Node) -> list[tuple[frozenset[int], int]]:
    options: list[tuple[frozenset[int], int]] = [(frozenset(), node.label)]
    for edge, child in node.children:
        below = _rooted_subtrees(child)
        grown = []
        for mono, coeff in options:
            grown.append((mono, coeff * edge))
            for sub, sub_coeff in below:
                grown.append((mono | sub | {child.var}, coeff * sub_coeff))
        options = grown
    return options


def augmented(poly: Polynomial) -> Polynomial:
    """``poly`` times one fresh variable (numbered after the existing ones)."""
    fresh = max(poly.variables, default=0) + 1
    return Polynomial({m | {fresh}: c for m, c in poly.terms.items()}, poly.variables + (fresh,))


def evaluate_at_powers(poly: Polynomial, ks: Sequence[int]) -> int:
    """``poly(3**k1, ..., 3**kr)`` with ``ks`` matched to sorted variables."""
    if len(ks) != poly.degree:
        raise DomainError(f"expected {poly.degree} exponents, got {len(ks)}")
    if any(k < 0 for k in ks):
        raise DomainError("exponents must be nonnegative")
    return poly.evaluate({v: 3**k for v, k in zip(poly.variables, ks)})


def _check_basic(poly: Polynomial) -> None:
    if any(c < 0 for c in poly.terms.values()):
        raise NotLowDefectError(f"{poly}: negative coefficient")
    if poly.constant_term < 1:
        raise NotLowDefectError(f"{poly}: constant term must be nonzero")
    if poly.leading_coefficient < 1:
        raise NotLowDefectError(f"{poly}: leading coefficient must be nonzero")


def keys(poly: Polynomial) -> dict[int, frozenset[int]]:
    """Smallest monomial (by divisibility) containing each variable."""
    _check_basic(poly)
    out = {}
    for v in poly.variables:
        family = [m for m in poly.terms if v in m]
        best = min(family, key=len)
        if any(not best <= m for m in family):
            raise NotLowDefectError(f"{poly}: x{v} has no unique key")
        out[v] = best
    return out


def antikeys(poly: Polynomial) -> dict[int, frozenset[int]]:
    """Largest monomial (by divisibility) omitting each variable."""
    _check_basic(poly)
    out = {}
    for v in poly.variables:
        family = [m for m in poly.terms if v not in m]
        best = max(family, key=len)
        if any(not m <= best for m in family):
            raise NotLowDefectError(f"{poly}: x{v} has no unique anti-key")
        out[v] = best
    return out


@dataclass(frozen=True)
class NestingOrder:
    """Forest on the variables; ``parent[x]`` is None for maximal variables."""

    parent: dict[int, int | None]

    def ancestors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def leq(self, a: int, b: int) -> bool:
        """``a`` precedes-or-equals ``b``: ``a`` is nested inside ``b``."""
        return a == b or b in self.ancestors(a)

    def descendants(self, v: int) -> set[int]:
        return {u for u in self.parent if u != v and self.leq(u, v)}

    def minimal(self) -> list[int]:
        has_child = {p for p in self.parent.values() if p is not None}
        return sorted(v for v in self.parent if v not in has_child)

    def maximal(self) -> list[int]:
        return sorted(v for v, p in self.parent.items() if p is None)

    def is_downward_closed(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.descendants(v) <= s for v in s)


def _forest_from_relation(variables: Sequence[int], above: Mapping[int, frozenset[int]], poly: Polynomial) -> NestingOrder:
    # above[v] = strict ancestors of v; they must form a chain.
    parent: dict[int, int | None] = {}
    for v in variables:
        anc = above[v]
        if not anc:
            parent[v] = None
            continue
        nearest = [a for a in anc if above[a] == anc - {a}]
        if len(nearest) != 1:
            raise NotLowDefectError(f"{poly}: nesting relation is not a forest")
        parent[v] = nearest[0]
    return NestingOrder(parent)


def nesting_order_from_keys(poly: Polynomial) -> NestingOrder:
    k = keys(poly)
    above = {v: frozenset(u for u in poly.variables if u != v and k[u] <= k[v]) for v in poly.variables}
    return _forest_from_relation(poly.variables, above, poly)


def nesting_order_from_antikeys(poly: Polynomial) -> NestingOrder:
    k = antikeys(poly)
    above = {v: frozenset(u for u in poly.variables if u != v and k[u] <= k[v]) for v in poly.variables}
    return _forest_from_relation(poly.variables, above, poly)


def nesting_order(poly: Polynomial) -> NestingOrder:
    """Nesting order recovered from the monomial support alone.

    Raises NotLowDefectError when keys or anti-keys are not unique or the two
    criteria disagree.
    """
    by_keys = nesting_order_from_keys(poly)
    if by_keys != nesting_order_from_antikeys(poly):
        raise NotLowDefectError(f"{poly}: keys and anti-keys disagree")
    return by_keys


def minimal_variables(poly: Polynomial) -> list[int]:
    return nesting_order(poly).minimal()


def maximal_variables(poly: Polynomial) -> list[int]:
    return nesting_order(poly).maximal()


def shape_of_polynomial(poly: Polynomial) -> Node:
    """Unlabeled tree shape (all labels 1) with the variables on its vertices."""
    order = nesting_order(poly)
    kids: dict[int | None, list[int]] = {}
    for v, p in order.parent.items():
        kids.setdefault(p, []).append(v)

    def build(v: int | None) -> Node:
        return Node(1, tuple((1, build(c)) for c in sorted(kids.get(v, ()))), v)

    return build(None)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _factorizations(n: int, parts: int) -> list[tuple[int, ...]]:
    """Ordered factorizations of ``n`` into exactly ``parts`` positive factors."""
    if parts == 1:
        return [(n,)]
    return [(d,) + rest for d in _divisors(n) for rest in _factorizations(n // d, parts - 1)]


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise ResourceError("tree enumeration budget exceeded")


def _trees(poly: Polynomial, budget: _Budget) -> list[Node]:
    """All trees (root var None) whose polynomial is ``poly``."""
    budget.spend()
    if poly.degree == 0:
        return [Node(poly.constant_term)]
    order = nesting_order(poly)
    tops = order.maximal()
    primitive = []
    for c in tops:
        part = poly.restrict({c} | order.descendants(c))
        g = Polynomial({m: v // part.content() for m, v in part.terms.items()}, part.variables)
        primitive.append(g)
    prod = primitive[0]
    for g in primitive[1:]:
        prod = prod * g
    if prod.variables != poly.variables or poly.constant_term % prod.constant_term:
        return []
    scale = poly.constant_term // prod.constant_term
    if any(poly.coefficient(m) != scale * c for m, c in prod.terms.items()) or len(prod.terms) != len(poly.terms):
        return []

    memo: dict[tuple[int, int], list[tuple[int, Node]]] = {}

    def branches(i: int, d: int) -> list[tuple[int, Node]]:
        if (i, d) not in memo:
            c, g = tops[i], primitive[i]
            edge = d * g.constant_term
            rest = {m - {c}: d * v for m, v in g.terms.items() if c in m}
            sub = Polynomial(rest, [u for u in g.variables if u != c])
            memo[(i, d)] = [(edge, Node(t.label, t.children, c)) for t in _trees(sub, budget)]
        return memo[(i, d)]

    out = []
    for split in _factorizations(scale, len(tops) + 1):
        root_label, ds = split[0], split[1:]
        options = [branches(i, d) for i, d in enumerate(ds)]
        for combo in itertools.product(*options):
            budget.spend()
            out.append(Node(root_label, tuple(combo)))
    return out


def trees_for_polynomial(poly: Polynomial, max_degree: int = 6, budget: int = 200_000) -> list[Node]:
    """Every low-defect tree whose polynomial is exactly ``poly``.

    The root's children are the maximal variables; the content split between
    the root label and each child factor ranges over ordered factorizations.
    """
    if poly.degree > max_degree:
        raise ResourceError(f"degree {poly.degree} exceeds the enumeration limit {max_degree}")
    _check_basic(poly)
    found = _trees(poly, _Budget(budget))
    return [t for t in found if polynomial_of(t) == poly]


def absolute_base_complexity(poly: Polynomial, table: ComplexityTable, max_degree: int = 6) -> int:
    """Least complexity of a tree yielding ``poly``."""
    trees = trees_for_polynomial(poly, max_degree=max_degree)
    if not trees:
        raise NotLowDefectError(f"{poly} is not a low-defect polynomial")
    return min(tree_complexity(t, table) for t in trees)
