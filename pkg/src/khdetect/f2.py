"""Linear algebra over the two-element field on int-packed bit rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class MalformedComplexError(ValueError):
    """Raised when consecutive boundary maps do not compose to zero."""


@dataclass(frozen=True)
class F2Matrix:
    """A ``rows x cols`` matrix; row ``r`` is an int whose bit ``c`` is entry (r, c).

    The matrix acts on column vectors, so a map ``F2^cols -> F2^rows``.
    """

    rows: int
    cols: int
    row_data: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_data)}")
        limit = 1 << self.cols
        for r in self.row_data:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} has bits beyond column {self.cols}")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(grid[0]) if grid else 0
        data = []
        for row in grid:
            v = 0
            for c, bit in enumerate(row):
                if bit & 1:
                    v |= 1 << c
            data.append(v)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        """Build from (row, col) pairs; repeated pairs cancel."""
        data = [0] * rows
        for r, c in entries:
            data[r] ^= 1 << c
        return cls(rows, cols, tuple(data))

    def to_dense(self) -> list[list[int]]:
        return [[(r >> c) & 1 for c in range(self.cols)] for r in self.row_data]

    def transpose(self) -> "F2Matrix":
        data = [0] * self.cols
        for i, row in enumerate(self.row_data):
            while row:
                low = row & -row
                data[low.bit_length() - 1] |= 1 << i
                row ^= low
        return F2Matrix(self.cols, self.rows, tuple(data))

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        b = other.row_data
        for row in self.row_data:
            acc = 0
            while row:
                low = row & -row
                acc ^= b[low.bit_length() - 1]
                row ^= low
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.row_data)


def rank(m: F2Matrix) -> int:
    """Rank by elimination, pivoting on the lowest set bit of each new row."""
    pivots: dict[int, int] = {}
    for row in m.row_data:
        while row:
            low = row & -row
            p = pivots.get(low)
            if p is None:
                pivots[low] = row
                break
            row ^= p
    return len(pivots)


def homology_rank(d_in: F2Matrix, d_out: F2Matrix) -> int:
    """dim ker(d_out) - rank(d_in) at the space between the two maps."""
    if d_in.rows != d_out.cols:
        raise ValueError(
            f"maps do not compose: d_in lands in dimension {d_in.rows}, "
            f"d_out starts from dimension {d_out.cols}"
        )
    if not (d_out @ d_in).is_zero():
        raise MalformedComplexError("boundary maps compose to a nonzero map")
    return d_out.cols - rank(d_out) - rank(d_in)
