"""Minimal s-expression reader used by the tree and covering file formats."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError


@dataclass(frozen=True)
class Atom:
    text: str
    pos: int
    quoted: bool = False


@dataclass(frozen=True)
class SList:
    items: list = field(default_factory=list)
    pos: int = 0

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom) and not self.items[0].quoted:
            return self.items[0].text
        return None


class Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        t = self.text
        while self.pos < len(t):
            if t[self.pos].isspace():
                self.pos += 1
            elif t[self.pos] == ";":
                while self.pos < len(t) and t[self.pos] != "\n":
                    self.pos += 1
            else:
                break

    def read(self) -> Atom | SList:
        self.skip()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "(":
            start = self.pos
            self.pos += 1
            items = []
            while True:
                self.skip()
                if self.pos >= len(self.text):
                    raise self.error("list not closed", start)
                if self.text[self.pos] == ")":
                    self.pos += 1
                    return SList(items, start)
                items.append(self.read())
        if ch == ")":
            raise self.error("unbalanced ')'")
        if ch == '"':
            start = self.pos
            self.pos += 1
            out = []
            while True:
                if self.pos >= len(self.text):
                    raise self.error("string not closed", start)
                c = self.text[self.pos]
                if c == "\\" and self.pos + 1 < len(self.text):
                    out.append(self.text[self.pos + 1])
                    self.pos += 2
                    continue
                self.pos += 1
                if c == '"':
                    return Atom("".join(out), start, quoted=True)
                out.append(c)
        start = self.pos
        while self.pos < len(self.text) and not self.text[self.pos].isspace() and self.text[self.pos] not in '();"':
            self.pos += 1
        return Atom(self.text[start : self.pos], start)

    def read_only(self) -> Atom | SList:
        """Read exactly one datum; trailing content is an error."""
        value = self.read()
        self.skip()
        if self.pos < len(self.text):
            raise self.error("unexpected trailing content")
        return value


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def expect_int(reader: Reader, item: object, what: str, minimum: int = 1) -> int:
    if not isinstance(item, Atom) or item.quoted or not item.text.isdigit():
        pos = getattr(item, "pos", None)
        raise reader.error(f"expected {what} (an integer)", pos)
    value = int(item.text)
    if value < minimum:
        raise reader.error(f"{what} must be at least {minimum}", item.pos)
    return value
