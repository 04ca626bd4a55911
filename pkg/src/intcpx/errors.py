"""Exception hierarchy shared by every module."""

from __future__ import annotations


class IntCpxError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(IntCpxError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(IntCpxError, IndexError):
    """A query exceeds the range covered by a complexity table."""


class ContractError(IntCpxError, ValueError):
    """A documented precondition of an operation does not hold."""


class BuildError(IntCpxError, RuntimeError):
    pass


class ResourceError(IntCpxError, RuntimeError):
    """A search exceeded its configured budget."""


class NotLowDefectError(IntCpxError, ValueError):
    """A polynomial or expression is not of low-defect form."""


class ParseError(IntCpxError, ValueError):
    """Malformed text input.  ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.line = self.column = None
        if pos is not None and text is not None:
            self.line = text.count("\n", 0, pos) + 1
            self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} (line {self.line}, column {self.column})"
        elif pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class StructureError(ParseError, NotLowDefectError):
    """Syntactically valid expression that breaks the low-defect construction rules."""
