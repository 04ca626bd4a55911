"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import sympy

from intcpx.expr import Constant, Expression, Product
from intcpx.tree import Node, assign_postorder


def naive_complexities(limit: int) -> list[int]:
    """Unpruned O(N^2) recurrence: every sum split and every divisor split."""
    c = [0] * (limit + 1)
    if limit >= 1:
        c[1] = 1
    for n in range(2, limit + 1):
        best = min(c[a] + c[n - a] for a in range(1, n // 2 + 1))
        for d in range(2, math.isqrt(n) + 1):
            if n % d == 0:
                best = min(best, c[d] + c[n // d])
        c[n] = best
    return c


def sympy_of(expr: Expression) -> sympy.Expr:
    if isinstance(expr, Constant):
        return sympy.Integer(expr.value)
    if isinstance(expr, Product):
        return sympy_of(expr.left) * sympy_of(expr.right)
    return sympy_of(expr.inner) * sympy.Symbol(f"x{expr.var}") + expr.addend


def sympy_terms(expr: Expression) -> dict[frozenset[int], int]:
    """Expand symbolically; map variable-index sets to coefficients."""
    e = sympy.expand(sympy_of(expr))
    out: dict[frozenset[int], int] = {}
    for term in sympy.Add.make_args(e):
        coeff, rest = term.as_coeff_Mul()
        idx = frozenset(int(str(s)[1:]) for s in rest.free_symbols)
        out[idx] = out.get(idx, 0) + int(coeff)
    return out


def tree_value(node: Node, point: dict[int, int]) -> int:
    """Evaluate a tree as the nested product it encodes."""
    v = node.label
    for edge, child in node.children:
        v *= point[child.var] * tree_value(child, point) + edge
    return v


def supposed_defect_below(C: int, ks: tuple[int, ...], value: int, t: Fraction, closed: bool) -> bool:
    """C + 3*sum(ks) - 3 log3(value) < t  (or <=), decided with integers only."""
    p, q = t.numerator, t.denominator
    e = q * (C + 3 * sum(ks)) - p
    lhs, rhs = (3**e, value ** (3 * q)) if e >= 0 else (1, 3 ** (-e) * value ** (3 * q))
    return lhs < rhs or (closed and lhs == rhs)


def random_tree(rng: random.Random, max_vertices: int, max_label: int, max_edge: int) -> Node:
    """Uniform-ish random labeled rooted tree, variables numbered post-order."""
    n = rng.randint(1, max_vertices)
    parents = [None] + [rng.randrange(i) for i in range(1, n)]
    labels = [rng.randint(1, max_label) for _ in range(n)]
    edges = [rng.randint(1, max_edge) for _ in range(n)]

    def build(i: int) -> Node:
        kids = tuple((edges[j], build(j)) for j in range(n) if parents[j] == i)
        return Node(labels[i], kids)

    return assign_postorder(build(0))


def ancestry(tree: Node) -> dict[int, set[int]]:
    """Strict ancestors of every variable vertex, read off the tree."""
    out: dict[int, set[int]] = {}

    def walk(node: Node, above: set[int]) -> None:
        for _, child in node.children:
            out[child.var] = set(above)
            walk(child, above | {child.var})

    walk(tree, set())
    return out
