"""Dense 0/1 matrices stored as one Python ``int`` bitset per row.

Bit ``j`` of a row integer is the entry in column ``j``.  Every other module
(slack matrices, non-incidence matrices, facet-check matrices) goes through
:class:`BinaryMatrix`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def popcount(x: int) -> int:
    return x.bit_count()


def bits_to_indices(x: int) -> list[int]:
    """Sorted list of the set bit positions of ``x``."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def indices_to_bits(indices: Iterable[int]) -> int:
    x = 0
    for i in indices:
        x |= 1 << i
    return x


def compress_bits(x: int, positions: Sequence[int]) -> int:
    """Gather the bits of ``x`` at ``positions`` into consecutive low bits."""
    out = 0
    for k, p in enumerate(positions):
        if (x >> p) & 1:
            out |= 1 << k
    return out


def support_contains(row_a: int, row_b: int, length: int | None = None) -> bool:
    """True iff every column where ``row_b`` is 1 also has ``row_a`` equal to 1.

    Rows are bitsets.  ``length`` is only used to reject rows that do not fit.
    """
    if length is not None and (row_a >> length or row_b >> length):
        raise ValueError("row does not fit in the declared length")
    return row_b & ~row_a == 0


@dataclass(frozen=True)
class BinaryMatrix:
    """Immutable 0/1 matrix with ``nrows`` rows of ``ncols`` bits each."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative shape")
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:b} does not fit in {self.ncols} columns")

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "BinaryMatrix":
        rows = tuple(rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "BinaryMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            x = 0
            for j, v in enumerate(r):
                if v not in (0, 1):
                    raise ValueError(f"entry {v!r} is not 0/1")
                if v:
                    x |= 1 << j
            rows.append(x)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BinaryMatrix":
        return cls.from_lists([[int(ch) for ch in line.strip()] for line in lines])

    @classmethod
    def from_array(cls, arr) -> "BinaryMatrix":
        return cls.from_lists(np.asarray(arr, dtype=np.int64).tolist())

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls(nrows, ncols, ((1 << ncols) - 1,) * nrows)

    # views ----------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols)) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    @property
    def full_row(self) -> int:
        return (1 << self.ncols) - 1

    def columns(self) -> tuple[int, ...]:
        """Column bitsets (bit ``i`` = entry in row ``i``)."""
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(cols)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.ncols, self.nrows, self.columns())

    def zero_sets(self) -> list[int]:
        """Per-row bitset of the columns holding a 0."""
        full = self.full_row
        return [full & ~r for r in self.rows]

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "BinaryMatrix":
        """Matrix whose row ``i`` is old row ``row_order[i]`` and column ``j`` old ``col_order[j]``."""
        if sorted(row_order) != list(range(self.nrows)) or sorted(col_order) != list(range(self.ncols)):
            raise ValueError("orders must be permutations")
        new_rows = []
        for i in row_order:
            r = self.rows[i]
            x = 0
            for j, c in enumerate(col_order):
                if (r >> c) & 1:
                    x |= 1 << j
            new_rows.append(x)
        return BinaryMatrix(self.nrows, self.ncols, tuple(new_rows))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BinaryMatrix":
        rows = tuple(compress_bits(self.rows[i], col_idx) for i in row_idx)
        return BinaryMatrix(len(rows), len(col_idx), rows)

    # counts ---------------------------------------------------------------

    def zeros_in_row(self, i: int) -> tuple[int, list[int]]:
        if not (0 <= i < self.nrows):
            raise IndexError(f"row {i} out of range")
        z = bits_to_indices(self.full_row & ~self.rows[i])
        return len(z), z

    def zeros_in_col(self, j: int) -> tuple[int, list[int]]:
        if not (0 <= j < self.ncols):
            raise IndexError(f"column {j} out of range")
        z = [i for i, r in enumerate(self.rows) if not (r >> j) & 1]
        return len(z), z

    def row_zero_counts(self) -> list[int]:
        return [self.ncols - r.bit_count() for r in self.rows]

    def col_zero_counts(self) -> list[int]:
        return [self.nrows - c.bit_count() for c in self.columns()]


def remove_dominated_rows(m: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    """Keep only the rows with inclusion-minimal support.

    Among identical rows the first one survives.  Relative order is kept and
    the returned list maps each kept row to its index in ``m``.
    """
    rows = m.rows
    # dedupe first: identical rows would otherwise knock each other out
    first: dict[int, int] = {}
    for i, r in enumerate(rows):
        first.setdefault(r, i)
    cand = sorted(first.values())
    # a row can only be dominated by a row of strictly smaller weight
    by_weight = sorted(cand, key=lambda i: rows[i].bit_count())
    kept = []
    for i in cand:
        r = rows[i]
        w = r.bit_count()
        dominated = False
        for k in by_weight:
            rk = rows[k]
            if rk.bit_count() >= w:
                break
            if rk & ~r == 0:
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return BinaryMatrix(len(kept), m.ncols, tuple(rows[i] for i in kept)), kept
