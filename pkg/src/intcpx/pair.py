"""Low-defect pairs: a witness tree together with a base complexity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .defect import DefectValue
from .errors import ContractError, DomainError
from .expr import Expression, parse_expression
from .poly import Polynomial, evaluate_at_powers, polynomial_of
from .table import ComplexityTable, complexity_of
from .tree import Node, canonical_form, renumber, tree_complexity, tree_of, to_sexpr


@dataclass(frozen=True)
class LowDefectPair:
    """``(f, C)`` with ``f`` the polynomial of ``tree``.

    Variables of ``tree`` are always exactly ``1..degree``.
    """

    tree: Node
    C: int

    def __post_init__(self) -> None:
        vars_ = self.tree.variables()
        if vars_ != list(range(1, len(vars_) + 1)) or self.tree.var is not None:
            raise DomainError("pair trees must carry variables 1..r on non-root vertices")

    @cached_property
    def poly(self) -> Polynomial:
        return polynomial_of(self.tree)

    @property
    def degree(self) -> int:
        return self.tree.degree

    @property
    def leading_coefficient(self) -> int:
        return math.prod(v.label for v in self.tree.vertices())

    def key(self) -> tuple[bytes, int]:
        """Identity up to tree isomorphism; used for sorting and dedup."""
        return canonical_form(self.tree), self.C

    def validate(self, table: ComplexityTable) -> None:
        need = tree_complexity(self.tree, table)
        if self.C < need:
            raise ContractError(f"base complexity {self.C} is below the tree complexity {need}")

    def __str__(self) -> str:
        return f"({self.poly}, {self.C})"


def make_pair(tree: Node, C: int) -> LowDefectPair:
    return LowDefectPair(renumber(tree)[0], C)


def pair_from_expression(
    expr: Expression | str, C: int | None = None, table: ComplexityTable | None = None
) -> LowDefectPair:
    """Pair from an expression; ``C`` defaults to the expression's tree complexity."""
    if isinstance(expr, str):
        expr = parse_expression(expr)
    tree = renumber(tree_of(expr))[0]
    if C is None:
        if table is None:
            raise DomainError("either C or a complexity table is required")
        C = tree_complexity(tree, table)
    pair = LowDefectPair(tree, C)
    if table is not None:
        pair.validate(table)
    return pair


def constant_pair(k: int, C: int, table: ComplexityTable | None = None) -> LowDefectPair:
    if table is not None and C < complexity_of(k, table):
        raise ContractError(f"C={C} is below ||{k}||")
    return LowDefectPair(Node(k), C)


def tensor(p1: LowDefectPair, p2: LowDefectPair) -> LowDefectPair:
    """Merge roots; the variables of ``p2`` follow those of ``p1``."""
    shift = p1.degree

    def moved(node: Node) -> Node:
        return Node(node.label, tuple((e, moved(c)) for e, c in node.children), None if node.var is None else node.var + shift)

    right = moved(p2.tree)
    tree = Node(p1.tree.label * right.label, p1.tree.children + right.children)
    return LowDefectPair(tree, p1.C + p2.C)


def augment_step(p: LowDefectPair, c: int, D: int, table: ComplexityTable) -> LowDefectPair:
    """``(f x_{r+1} + c, C + D)``; requires ``D >= ||c||``."""
    if c < 1:
        raise DomainError("the addend must be positive")
    need = complexity_of(c, table)
    if D < need:
        raise ContractError(f"D={D} is below ||{c}||={need}")
    old = Node(p.tree.label, p.tree.children, p.degree + 1)
    return LowDefectPair(Node(1, ((c, old),)), p.C + D)


def pair_defect(p: LowDefectPair) -> DefectValue:
    return DefectValue(p.C, p.poly.leading_coefficient)


def point_defect(p: LowDefectPair, ks: Sequence[int]) -> DefectValue:
    """Supposed defect ``C + 3*sum(ks) - 3 log3 f(3^ks)``."""
    return DefectValue(p.C + 3 * sum(ks), evaluate_at_powers(p.poly, ks))


def pair_sexpr(p: LowDefectPair) -> str:
    return f"(pair (C {p.C}) (tree {to_sexpr(p.tree)}))"
