"""Integer complexity tables and the defect queries built on them."""

from __future__ import annotations

import functools
import math
import mmap
import os
import struct
from dataclasses import dataclass, field
from typing import Iterator

from .defect import DefectValue, Ordering, Threshold, compare
from .errors import BuildError, DomainError, ParseError, RangeError

MAGIC = b"ICX1"
VERSION = 1
_HEADER = struct.Struct("<4sBQ")
_LOG3 = math.log(3)


@dataclass(frozen=True)
class ComplexityTable:
    """``entries[n]`` is the complexity of ``n`` for ``1 <= n <= limit``.

    ``entries`` is any byte buffer of length ``limit + 1``; index 0 is unused.
    """

    limit: int
    entries: bytes | bytearray | memoryview | mmap.mmap
    build_params: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, n: int) -> int:
        return complexity_of(n, self)

    def __len__(self) -> int:
        return self.limit

    def values(self) -> Iterator[tuple[int, int]]:
        e = self.entries
        for n in range(1, self.limit + 1):
            yield n, e[n]


def build_table(limit: int, sum_cap_override: int | None = None) -> ComplexityTable:
    """Compute the complexity of every ``n <= limit``.

    Product candidates are pushed forward from each finished entry, so all of
    them are in place when ``n`` is reached.  Sum candidates ``a + (n - a)``
    are only tried for ``a <= 2 * 3**(d/3)`` where ``d`` is the defect of the
    best bound known so far; a smaller addend ``a`` in an optimal split obeys
    ``3 log3 a <= U - 3 log3(n/2)``.
    """
    if limit < 1:
        raise DomainError("table limit must be at least 1")
    sentinel = 1 << 30
    c = [sentinel] * (limit + 1)
    c[1] = 1
    for n in range(2, limit + 1):
        u = c[n]
        if c[n - 1] + 1 < u:
            u = c[n - 1] + 1
        if sum_cap_override is None:
            cap = int(2.0 * 3.0 ** ((u - 3.0 * math.log(n) / _LOG3) / 3.0)) + 1
        else:
            cap = sum_cap_override
        half = n >> 1
        if cap > half:
            cap = half
        for a in range(2, cap + 1):
            v = c[a] + c[n - a]
            if v < u:
                u = v
        c[n] = u
        m = limit // n
        if m >= 2:
            top = m if m < n else n
            idx = n + n
            for a in range(2, top + 1):
                v = u + c[a]
                if v < c[idx]:
                    c[idx] = v
                idx += n
    c[0] = 0
    if max(c) > 255:
        raise BuildError("complexity exceeds one byte of storage")
    return ComplexityTable(
        limit,
        bytes(c),
        {"sum_cap_override": sum_cap_override, "pruning": "defect-bound"},
    )


def complexity_of(n: int, table: ComplexityTable) -> int:
    if not 1 <= n <= table.limit:
        raise RangeError(f"{n} is outside the table range [1, {table.limit}]")
    return table.entries[n]


def defect_of(n: int, table: ComplexityTable) -> DefectValue:
    return DefectValue(complexity_of(n, table), n)


def is_leader(n: int, table: ComplexityTable) -> bool:
    """True when ``n`` is the smallest number with its defect."""
    c = complexity_of(n, table)
    if n % 3:
        return True
    return c < 3 + complexity_of(n // 3, table)


def leader_decomposition(n: int, table: ComplexityTable) -> tuple[int, int]:
    """Return ``(m, k)`` with ``n = 3**k * m``, ``m`` a leader of the same defect."""
    complexity_of(n, table)
    k = 0
    while not is_leader(n, table):
        n //= 3
        k += 1
    return n, k


def _scan_powers(n: int, horizon: int, table: ComplexityTable) -> list[int]:
    if horizon < 0:
        raise DomainError("horizon must be nonnegative")
    if n < 1 or n * 3**horizon > table.limit:
        raise RangeError(f"3^{horizon}*{n} exceeds table limit {table.limit}")
    e = table.entries
    return [e[n * 3**k] for k in range(horizon + 1)]


def stable_defect_within(n: int, horizon: int, table: ComplexityTable) -> tuple[DefectValue, int, bool]:
    """Minimum of ``defect(3^k n)`` over ``0 <= k <= horizon``.

    Returns ``(value, k, exhausted)``; ``exhausted`` flags a minimum found at the
    last scanned power, where stability is not certified.
    """
    cs = _scan_powers(n, horizon, table)
    # defect(3^k n) - defect(n) = (c_k - 3k) - c_0, so minimise c_k - 3k.
    best_k = min(range(horizon + 1), key=lambda k: (cs[k] - 3 * k, k))
    return DefectValue(cs[best_k], n * 3**best_k), best_k, best_k == horizon


def stable_complexity_within(n: int, horizon: int, table: ComplexityTable) -> tuple[int, int, bool]:
    cs = _scan_powers(n, horizon, table)
    best_k = min(range(horizon + 1), key=lambda k: (cs[k] - 3 * k, k))
    return cs[best_k] - 3 * best_k, best_k, best_k == horizon


def enumerate_leaders_below(threshold: Threshold, table: ComplexityTable) -> list[int]:
    """Leaders ``n <= table.limit`` whose defect the threshold admits."""
    e = table.entries
    out = []
    for n in range(1, table.limit + 1):
        if n % 3 == 0 and e[n] >= 3 + e[n // 3]:
            continue
        if threshold.admits(DefectValue(e[n], n)):
            out.append(n)
    return out


def distinct_defects_below(threshold: Threshold, table: ComplexityTable) -> list[DefectValue]:
    """Sorted defects admitted by ``threshold`` among ``n <= table.limit``.

    Each defect has a unique leader, so scanning leaders suffices; duplicates
    are still removed by exact equality.  Results are empirical up to the limit.
    """
    values = [defect_of(n, table) for n in enumerate_leaders_below(threshold, table)]
    values.sort(key=functools.cmp_to_key(lambda a, b: int(compare(a, b))))
    out: list[DefectValue] = []
    for d in values:
        if not out or compare(out[-1], d) is not Ordering.EQUAL:
            out.append(d)
    return out


def save_table(table: ComplexityTable, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, table.limit))
        fh.write(memoryview(table.entries)[1 : table.limit + 1])


def load_table(path: str | os.PathLike) -> ComplexityTable:
    """Read a table file; the entries are memory-mapped, not copied."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) < _HEADER.size:
            raise ParseError(f"{path}: truncated table header")
        magic, version, limit = _HEADER.unpack(head)
        if magic != MAGIC:
            raise ParseError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise ParseError(f"{path}: unsupported table version {version}")
        size = os.fstat(fh.fileno()).st_size
        if size != _HEADER.size + limit:
            raise ParseError(f"{path}: expected {limit} entries, found {size - _HEADER.size}")
        if limit == 0:
            raise ParseError(f"{path}: empty table")
        mm = mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ)
    # Offset by one so that entries[n] addresses byte n - 1 of the payload.
    view = memoryview(mm)[_HEADER.size - 1 :]
    return ComplexityTable(limit, view, {"source": os.fspath(path)})
