"""Low-defect trees: rooted trees with positive labels on vertices and edges.

Every non-root vertex carries the id of the variable it stands for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError
from .expr import Constant, Expression, Step, constants, product_of
from .sexpr import Atom, Reader, SList, expect_int
from .table import ComplexityTable, complexity_of


@dataclass(frozen=True)
class Node:
    label: int
    children: tuple[tuple[int, Node], ...] = ()
    var: int | None = None

    def __post_init__(self) -> None:
        if self.label < 1:
            raise DomainError(f"vertex labels must be positive, got {self.label}")
        for edge, _ in self.children:
            if edge < 1:
                raise DomainError(f"edge labels must be positive, got {edge}")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def vertices(self) -> Iterator[Node]:
        yield self
        for _, child in self.children:
            yield from child.vertices()

    def edges(self) -> Iterator[int]:
        for edge, child in self.children:
            yield edge
            yield from child.edges()

    def variables(self) -> list[int]:
        return sorted(v.var for v in self.vertices() if v.var is not None)

    @property
    def degree(self) -> int:
        return sum(1 for _ in self.vertices()) - 1

    def __str__(self) -> str:
        return to_sexpr(self, canonical=False)


LowDefectTree = Node


def tree_of(expr: Expression) -> Node:
    """Build the tree of an expression; variables land on non-root vertices."""
    if isinstance(expr, Constant):
        return Node(expr.value)
    if isinstance(expr, Step):
        inner = tree_of(expr.inner)
        return Node(1, ((expr.addend, _with_var(inner, expr.var)),))
    left, right = tree_of(expr.left), tree_of(expr.right)
    return Node(left.label * right.label, left.children + right.children)


def _with_var(node: Node, var: int | None) -> Node:
    return Node(node.label, node.children, var)


def reduced_expression_of(tree: Node) -> Expression:
    """The reduced expression for ``tree``, with multiplications by 1 omitted."""
    items: list[Expression] = []
    for edge, child in tree.children:
        if child.var is None:
            raise DomainError("non-root vertices need variable ids; use assign_postorder first")
        items.append(Step(_root_expression(child), child.var, edge))
    if tree.label != 1 or not items:
        items.insert(0, Constant(tree.label))
    return product_of(items)


def _root_expression(node: Node) -> Expression:
    return reduced_expression_of(_with_var(node, None))


def assign_postorder(tree: Node, start: int = 1) -> Node:
    """Number the non-root vertices ``start, start+1, ...`` in post-order."""
    counter = [start]

    def walk(node: Node, is_root: bool) -> Node:
        kids = tuple((e, walk(c, False)) for e, c in node.children)
        var = None
        if not is_root:
            var = counter[0]
            counter[0] += 1
        return Node(node.label, kids, var)

    return walk(tree, True)


def renumber(tree: Node) -> tuple[Node, dict[int, int]]:
    """Relabel variables densely as 1..r keeping their relative order."""
    mapping = {old: i for i, old in enumerate(tree.variables(), start=1)}

    def walk(node: Node) -> Node:
        kids = tuple((e, walk(c)) for e, c in node.children)
        return Node(node.label, kids, None if node.var is None else mapping[node.var])

    return walk(tree), mapping


def parent_map(tree: Node) -> dict[int, int | None]:
    """Map each variable to the variable of its parent vertex (None for the root)."""
    out: dict[int, int | None] = {}

    def walk(node: Node) -> None:
        for _, child in node.children:
            out[child.var] = node.var  # type: ignore[index]
            walk(child)

    walk(tree)
    return out


def _sexpr(node: Node, canonical: bool) -> str:
    branches = [f"(edge {e} {_sexpr(c, canonical)})" for e, c in node.children]
    if canonical:
        branches.sort()
    return " ".join([f"(node {node.label}"] + branches) + ")"


def to_sexpr(tree: Node, canonical: bool = True) -> str:
    return _sexpr(tree, canonical)


def canonical_form(tree: Node) -> bytes:
    """Isomorphism invariant of a labeled rooted tree (variable ids ignored)."""
    return _sexpr(tree, True).encode()


def canonicalize(tree: Node) -> Node:
    """Reorder children into canonical order and renumber variables post-order."""

    def walk(node: Node) -> Node:
        kids = sorted(((e, walk(c)) for e, c in node.children), key=lambda b: f"(edge {b[0]} {_sexpr(b[1], True)})")
        return Node(node.label, tuple(kids))

    return assign_postorder(walk(tree))


def shape_signature(tree: Node) -> str:
    """Canonical string of the unlabeled rooted tree underlying ``tree``."""
    return "(" + "".join(sorted(shape_signature(c) for _, c in tree.children)) + ")"


def tree_from_sexpr_value(reader: Reader, value: Atom | SList) -> Node:
    if not isinstance(value, SList) or value.head() != "node":
        raise reader.error("expected (node LABEL branch...)", value.pos)
    if len(value.items) < 2:
        raise reader.error("node needs a label", value.pos)
    label = expect_int(reader, value.items[1], "vertex label")
    kids = []
    for item in value.items[2:]:
        if not isinstance(item, SList) or item.head() != "edge" or len(item.items) != 3:
            raise reader.error("expected (edge LABEL (node ...))", item.pos)
        edge = expect_int(reader, item.items[1], "edge label")
        kids.append((edge, tree_from_sexpr_value(reader, item.items[2])))
    return Node(label, tuple(kids))


def parse_tree(text: str) -> Node:
    """Parse a tree s-expression; variables are numbered in post-order."""
    reader = Reader(text)
    return assign_postorder(tree_from_sexpr_value(reader, reader.read_only()))


def equivalent(a: Node | Expression, b: Node | Expression) -> bool:
    """Expressions (or trees) are equivalent when their trees are isomorphic."""
    ta = a if isinstance(a, Node) else tree_of(a)
    tb = b if isinstance(b, Node) else tree_of(b)
    return canonical_form(ta) == canonical_form(tb)


def tree_complexity(tree: Node, table: ComplexityTable) -> int:
    """Edges, leaves, and non-leaf vertices with label > 1 contribute ``||label||``."""
    total = sum(complexity_of(e, table) for e in tree.edges())
    for v in tree.vertices():
        if v.is_leaf or v.label > 1:
            total += complexity_of(v.label, table)
    return total


def expression_complexity(expr: Expression, table: ComplexityTable) -> int:
    return sum(complexity_of(c, table) for c in constants(expr))
