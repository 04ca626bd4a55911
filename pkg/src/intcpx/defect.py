"""Exact defect values and thresholds.

A defect value ``(m, v)`` denotes the real number ``m - 3*log3(v)``.  Every
ordering decision is made by comparing integers; floats are for display only.
"""

from __future__ import annotations

import decimal
import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError

_LOG3 = math.log(3)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self) -> str:
        return self.name.lower()


def _sign(lhs: int, rhs: int) -> Ordering:
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


@functools.total_ordering
@dataclass(frozen=True)
class DefectValue:
    m: int
    v: int

    def __post_init__(self) -> None:
        if self.v < 1:
            raise DomainError(f"defect argument must be positive, got {self.v}")

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, (DefectValue, Threshold, Fraction, int)):
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (DefectValue, Threshold, Fraction, int)):
            return NotImplemented
        return compare(self, other) is Ordering.EQUAL

    def __hash__(self) -> int:
        # Equal values share their 3-free part of v and m - 3*ord_3(v).
        k, u = _split_three(self.v)
        return hash((self.m - 3 * k, u))

    def __float__(self) -> float:
        return self.m - 3 * math.log(self.v) / _LOG3

    def exact(self) -> str:
        return f"{self.m} - 3*log3({self.v})"

    def to_decimal(self, digits: int = 6) -> decimal.Decimal:
        """Decimal value rounded to ``digits`` places after the point."""
        ctx = decimal.Context(prec=digits + len(str(self.v)) + len(str(abs(self.m))) + 20)
        val = ctx.subtract(
            decimal.Decimal(self.m),
            ctx.divide(ctx.multiply(3, ctx.ln(decimal.Decimal(self.v))), ctx.ln(decimal.Decimal(3))),
        )
        return val.quantize(decimal.Decimal(1).scaleb(-digits), context=ctx)

    def integer_value(self) -> int | None:
        """The value as an int when it is an integer, else None."""
        k, u = _split_three(self.v)
        if u != 1:
            return None
        return self.m - 3 * k


def _split_three(v: int) -> tuple[int, int]:
    k = 0
    while v % 3 == 0:
        v //= 3
        k += 1
    return k, v


@dataclass(frozen=True)
class Threshold:
    """Cutoff ``s`` for defects; ``closed`` selects ``<= s`` instead of ``< s``."""

    value: Fraction
    closed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def mode(self) -> str:
        return "closed" if self.closed else "strict"

    def admits(self, d: DefectValue) -> bool:
        c = compare(d, self.value)
        return c is Ordering.LESS or (self.closed and c is Ordering.EQUAL)

    def __str__(self) -> str:
        return f"{format_fraction(self.value)} ({self.mode})"


def parse_fraction(text: str) -> Fraction:
    """Parse a decimal literal ("1.92") or a ratio ("48/25") exactly."""
    s = text.strip()
    if not s or any(ch in s for ch in "eEjJ_ ") or s.lower() in ("nan", "inf", "-inf", "+inf"):
        raise ParseError(f"invalid threshold {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid threshold {text!r}") from exc


def parse_threshold(text: str, closed: bool = False) -> Threshold:
    return Threshold(parse_fraction(text), closed)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmp_fraction(d: DefectValue, x: Fraction) -> Ordering:
    # m - 3 log3 v  ?  p/q   <=>   3^(q m - p)  ?  v^(3q)
    p, q = x.numerator, x.denominator
    e = q * d.m - p
    w = d.v ** (3 * q)
    if e >= 0:
        return _sign(3**e, w)
    return _sign(1, 3 ** (-e) * w)


def compare(a: DefectValue | Threshold | Fraction | int, b: DefectValue | Threshold | Fraction | int) -> Ordering:
    """Exact three-way comparison of the real numbers denoted by ``a`` and ``b``."""
    if isinstance(a, Threshold):
        a = a.value
    if isinstance(b, Threshold):
        b = b.value
    if isinstance(a, DefectValue) and isinstance(b, DefectValue):
        # m1 - 3log3 v1 ? m2 - 3log3 v2  <=>  3^m1 v2^3 ? 3^m2 v1^3
        e = a.m - b.m
        if e >= 0:
            return _sign(3**e * b.v**3, a.v**3)
        return _sign(b.v**3, 3 ** (-e) * a.v**3)
    if isinstance(a, DefectValue):
        return _cmp_fraction(a, Fraction(b))
    if isinstance(b, DefectValue):
        return Ordering(-_cmp_fraction(b, Fraction(a)))
    return _sign(Fraction(a), Fraction(b))  # type: ignore[arg-type]
