"""Dense linear algebra over GF(2), rows stored as Python ints (bit j = column j)."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BitMatrix:
    """Square 0/1 matrix. Immutable; rows are ints read little-endian by column."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.n:
                raise ValueError("row has bits outside the matrix")

    @classmethod
    def from_lists(cls, rows: list[list[int]]) -> BitMatrix:
        n = len(rows)
        packed = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
            packed.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(n, tuple(packed))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> BitMatrix:
        """Symmetric matrix with a 1 at (i, j) and (j, i) for each pair."""
        rows = [0] * n
        for i, j in pairs:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def is_symmetric_zero_diagonal(self) -> bool:
        for i in range(self.n):
            if (self.rows[i] >> i) & 1:
                return False
            for j in range(i + 1, self.n):
                if self.entry(i, j) != self.entry(j, i):
                    return False
        return True


def rank_of_rows(rows) -> int:
    """GF(2) rank of arbitrary int rows, by elimination on leading bits."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                break
            row ^= pivot
    return len(pivots)


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.rows)


def corank(m: BitMatrix) -> int:
    return m.n - rank(m)


def principal_submatrix(m: BitMatrix, indices: list[int]) -> BitMatrix:
    """Rows and columns restricted to `indices`, order preserved.

    Indices must be in range and duplicate-free.
    """
    seen = set()
    for i in indices:
        if not 0 <= i < m.n:
            raise ValueError(f"index {i} out of range")
        if i in seen:
            raise ValueError(f"duplicate index {i}")
        seen.add(i)
    rows = []
    for i in indices:
        src = m.rows[i]
        packed = 0
        for col, j in enumerate(indices):
            packed |= ((src >> j) & 1) << col
        rows.append(packed)
    return BitMatrix(len(indices), tuple(rows))


def masked_rank(m: BitMatrix, indices) -> int:
    """Rank of the principal submatrix on `indices`, without repacking.

    Zeroing the complementary columns of the selected rows leaves a matrix
    with the same rank as the submatrix, since column positions are
    irrelevant to rank.
    """
    mask = 0
    for i in indices:
        mask |= 1 << i
    return rank_of_rows(m.rows[i] & mask for i in indices)
