"""Low-defect expressions: AST, parser and printer.

Grammar (whitespace is ignored)::

    step    := product? VAR '+' INT | product
    product := factor+
    factor  := INT | '(' step ')'
    VAR     := 'x' INT

Juxtaposition is multiplication.  ``E x + c`` multiplies the whole product
``E`` preceding the variable, so ``73(3x1+1)x2+6`` means ``(73*(3x1+1))*x2+6``.
A missing product before a variable stands for the constant 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError, StructureError


@dataclass(frozen=True)
class Constant:
    value: int


@dataclass(frozen=True)
class Product:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Step:
    """``inner * x_var + addend``."""

    inner: Expression
    var: int
    addend: int


Expression = Union[Constant, Product, Step]


def factors(expr: Expression) -> list[Expression]:
    """Flatten nested products into their non-product factors."""
    if isinstance(expr, Product):
        return factors(expr.left) + factors(expr.right)
    return [expr]


def product_of(items: list[Expression]) -> Expression:
    out = items[0]
    for item in items[1:]:
        out = Product(out, item)
    return out


def constants(expr: Expression) -> Iterator[int]:
    """Every integer constant occurring in ``expr``, addends included."""
    if isinstance(expr, Constant):
        yield expr.value
    elif isinstance(expr, Product):
        yield from constants(expr.left)
        yield from constants(expr.right)
    else:
        yield from constants(expr.inner)
        yield expr.addend


def variables(expr: Expression) -> list[int]:
    if isinstance(expr, Constant):
        return []
    if isinstance(expr, Product):
        return variables(expr.left) + variables(expr.right)
    return variables(expr.inner) + [expr.var]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.seen: set[int] = set()

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def structure(self, msg: str, pos: int | None = None) -> StructureError:
        return StructureError(msg, self.pos if pos is None else pos, self.text)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def step(self) -> Expression:
        items: list[Expression] = []
        while (ch := self.peek()) and (ch.isdigit() or ch == "("):
            items.append(self.factor())
        ch = self.peek()
        if ch == "x":
            at = self.pos
            self.pos += 1
            if not self.peek().isdigit():
                raise self.error("expected a variable index after 'x'")
            var = self.integer()
            if var in self.seen:
                raise self.structure(f"variable x{var} occurs more than once", at)
            self.seen.add(var)
            if self.peek() != "+":
                raise self.structure(f"x{var} must be followed by '+ c' with a positive constant c")
            self.pos += 1
            nxt = self.peek()
            if nxt in ("x", "("):
                raise self.structure("the addend of a step must be a positive integer constant")
            at = self.pos
            c = self.integer()
            if c < 1:
                raise self.structure("the addend of a step must be positive", at)
            inner = product_of(items) if items else Constant(1)
            return Step(inner, var, c)
        if not items:
            raise self.error("expected an integer, '(' or a variable")
        if ch == "+":
            raise self.structure("'+' may only follow a variable, as in E*x + c")
        return product_of(items)

    def factor(self) -> Expression:
        if self.peek() == "(":
            self.pos += 1
            inner = self.step()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        at = self.pos
        value = self.integer()
        if value < 1:
            raise self.structure("constants must be positive", at)
        return Constant(value)


def parse_expression(text: str) -> Expression:
    p = _Parser(text)
    expr = p.step()
    if p.peek():
        raise p.error(f"unexpected {p.peek()!r}")
    return expr


def _factor_str(expr: Expression, first: bool) -> str:
    if isinstance(expr, Constant):
        return str(expr.value) if first else f"({expr.value})"
    return f"({format_expression(expr)})"


def _product_str(expr: Expression) -> str:
    return "".join(_factor_str(f, i == 0) for i, f in enumerate(factors(expr)))


def format_expression(expr: Expression) -> str:
    if isinstance(expr, Step):
        prefix = "" if expr.inner == Constant(1) else _product_str(expr.inner)
        return f"{prefix}x{expr.var}+{expr.addend}"
    return _product_str(expr)
