"""Exact overpartition counts with persistence.

An overpartition of n is a partition of n in which the first occurrence of
each distinct part may additionally be overlined; ``pbar(n)`` counts them
(1, 2, 4, 8, 14, 24, ... from n = 0).  The generating function is

    sum pbar(n) q^n  =  prod (1 + q^k)/(1 - q^k)  =  prod (1 - q^{2k})/(1 - q^k)^2,

and the eta-quotient form on the right is what the builder exploits: writing
E(q) = prod (1 - q^k), the series D(q) = E(q^2) is sparse (coefficients +-1 at
twice the generalized pentagonal numbers), Q(q) = D(q)/E(q) is the
distinct-parts partition series, and pbar(q) = Q(q)/E(q).  Both divisions by
E(q) are sparse pentagonal-number convolutions (O(sqrt n) terms each), so the
whole table costs O(n^{3/2}) big-integer additions instead of the O(n^2) of a
direct convolution.

A deliberately naive enumeration oracle is included for test-time
cross-checking only; it walks every partition and weights it by 2^(number of
distinct parts).
"""

from __future__ import annotations

import hashlib
import math
from typing import Iterator, List, Sequence, Tuple

ENUMERATION_LIMIT = 60
DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes


class MemoryBudgetError(Exception):
    """Requested table would exceed the configured memory budget."""


class TableFormatError(Exception):
    """Table file is malformed, truncated or fails its checksum."""


class OverpartitionTable:
    """Immutable table of exact overpartition counts pbar(0..max_n)."""

    __slots__ = ("_values",)

    def __init__(self, values: Sequence[int]):
        if not values:
            raise ValueError("table must contain at least pbar(0)")
        self._values: Tuple[int, ...] = tuple(values)

    @property
    def max_n(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> Tuple[int, ...]:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, n: int) -> int:
        return self._values[n]

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, OverpartitionTable):
            return self._values == other._values
        return NotImplemented

    def __repr__(self) -> str:
        return f"OverpartitionTable(max_n={self.max_n})"


def _pentagonal_pairs(limit: int) -> List[Tuple[int, int]]:
    """Generalized pentagonal numbers m(3m -+ 1)/2 <= limit with the sign
    (-1)^m they carry in prod (1 - q^k), sorted ascending."""
    out = []
    m = 1
    while True:
        g_minus = m * (3 * m - 1) // 2
        g_plus = m * (3 * m + 1) // 2
        if g_minus > limit:
            break
        sign = -1 if m % 2 else 1
        out.append((g_minus, sign))
        if g_plus <= limit:
            out.append((g_plus, sign))
        m += 1
    out.sort()
    return out


def estimated_table_bytes(max_n: int) -> int:
    """Coarse upper estimate of the memory a table build needs.

    pbar(n) has about pi*sqrt(n)/ln(10) digits, so the digit total grows like
    0.91 * max_n^{3/2}; two working arrays plus per-int overhead are folded
    into the constants.
    """
    isq = max(max_n, 1)
    digit_total = (91 * isq * math.isqrt(isq)) // 100 + isq
    return digit_total + 120 * (max_n + 1)


def build_table(max_n: int, *, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> OverpartitionTable:
    """Exact pbar(0..max_n) via the two pentagonal convolutions.

    Deterministic; raises :class:`MemoryBudgetError` before allocating when the
    estimate exceeds ``memory_budget``.
    """
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    if estimated_table_bytes(max_n) > memory_budget:
        raise MemoryBudgetError(
            f"table to {max_n} needs about {estimated_table_bytes(max_n)} bytes, "
            f"budget is {memory_budget}")

    pent = _pentagonal_pairs(max_n)
    # Coefficients of D(q) = prod (1 - q^{2k}): +-1 at twice a pentagonal number.
    sparse = {0: 1}
    for g, sign in _pentagonal_pairs(max_n // 2 + 1):
        if 2 * g <= max_n:
            sparse[2 * g] = sign

    # First convolution: Q(q) * E(q) = D(q) gives distinct-part counts.
    distinct = [0] * (max_n + 1)
    distinct[0] = 1
    for n in range(1, max_n + 1):
        acc = sparse.get(n, 0)
        for g, sign in pent:
            if g > n:
                break
            acc -= sign * distinct[n - g]
        distinct[n] = acc

    # Second convolution: pbar(q) * E(q) = Q(q).
    values = [0] * (max_n + 1)
    values[0] = 1
    for n in range(1, max_n + 1):
        acc = distinct[n]
        for g, sign in pent:
            if g > n:
                break
            acc -= sign * values[n - g]
        values[n] = acc

    _validate_values(values)
    return OverpartitionTable(values)


def _validate_values(values: Sequence[int]) -> None:
    # Cheap structural sanity on every build: evenness for n >= 1 (toggling
    # the overline on the largest part pairs the overpartitions up) and strict
    # growth.  A failure here means the recurrence itself regressed.
    if values[0] != 1:
        raise AssertionError("pbar(0) must be 1")
    for n in range(1, len(values)):
        if values[n] % 2:
            raise AssertionError(f"pbar({n}) is odd")
        if values[n] <= values[n - 1] and n >= 2:
            raise AssertionError(f"pbar not increasing at {n}")


def enumerate_overpartitions(n: int) -> int:
    """Brute-force overpartition count: every partition of n weighted by
    2^(distinct parts).  Guarded to n <= 60; meant for tests only."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUMERATION_LIMIT:
        raise ValueError(
            f"enumeration oracle is exponential and capped at n = {ENUMERATION_LIMIT}")

    def count(remaining: int, max_part: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for part in range(min(remaining, max_part), 0, -1):
            for copies in range(1, remaining // part + 1):
                total += 2 * count(remaining - part * copies, part - 1)
        return total

    return count(n, n)


# -- persistence ---------------------------------------------------------------
#
# Line-oriented text format:
#   line 1          OPART v1 <max_n>
#   lines 2..       <n>\t<decimal digits of pbar(n)>   ascending n
#   trailing line   #sha256 <hex digest of all preceding bytes>

_MAGIC = "OPART v1"


def save_table(table: OverpartitionTable, path) -> str:
    """Write the table; returns the hex digest recorded in the trailer."""
    lines = [f"{_MAGIC} {table.max_n}\n"]
    lines.extend(f"{n}\t{value}\n" for n, value in enumerate(table.values))
    payload = "".join(lines).encode("ascii")
    digest = hashlib.sha256(payload).hexdigest()
    with open(path, "wb") as fh:
        fh.write(payload)
        fh.write(f"#sha256 {digest}\n".encode("ascii"))
    return digest


def load_table(path) -> OverpartitionTable:
    with open(path, "rb") as fh:
        raw = fh.read()
    lines = raw.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    if len(lines) < 3:
        raise TableFormatError("file too short to hold a table")

    trailer = lines[-1]
    if not trailer.startswith(b"#sha256 "):
        raise TableFormatError("missing checksum trailer")
    stated = trailer[len(b"#sha256 "):].decode("ascii", errors="replace").strip()
    payload = b"\n".join(lines[:-1]) + b"\n"
    actual = hashlib.sha256(payload).hexdigest()
    if stated != actual:
        raise TableFormatError(f"checksum mismatch: file says {stated}, content is {actual}")

    header = lines[0].decode("ascii", errors="replace").split()
    if len(header) != 3 or " ".join(header[:2]) != _MAGIC:
        raise TableFormatError(f"bad header line: {lines[0]!r}")
    try:
        max_n = int(header[2])
    except ValueError as exc:
        raise TableFormatError(f"bad max_n in header: {header[2]!r}") from exc
    if max_n < 0:
        raise TableFormatError(f"negative max_n {max_n}")

    records = lines[1:-1]
    if len(records) != max_n + 1:
        raise TableFormatError(
            f"header says {max_n + 1} records, file has {len(records)}")
    values = []
    for expected_n, line in enumerate(records):
        parts = line.split(b"\t")
        if len(parts) != 2:
            raise TableFormatError(f"malformed record {line!r}")
        try:
            n = int(parts[0])
            value = int(parts[1])
        except ValueError as exc:
            raise TableFormatError(f"non-numeric record {line!r}") from exc
        if n != expected_n:
            raise TableFormatError(f"record out of order: expected n={expected_n}, got {n}")
        if value < 0:
            raise TableFormatError(f"negative count at n={n}")
        values.append(value)
    return OverpartitionTable(values)
