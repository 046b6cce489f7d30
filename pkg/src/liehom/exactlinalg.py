"""Exact sparse linear algebra over the rationals.

Matrices are stored as ``{(row, col): Fraction}`` maps with no explicit zeros.
Rank, kernel dimension and solving all go through one fraction-free sparse
elimination on integer rows; pivots are chosen from the shortest remaining row,
then by smallest bit length, which keeps coefficient growth in check on the
very sparse, mostly ``±1`` matrices produced by Chevalley-Eilenberg
differentials.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RationalMatrix",
    "rank",
    "kernel_dimension",
    "solve",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    pass


class RationalMatrix:
    """Immutable sparse matrix with :class:`~fractions.Fraction` entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be non-negative")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self._entries = MappingProxyType(clean)

    @property
    def entries(self) -> Mapping[tuple[int, int], Fraction]:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def outer(cls, column: Sequence[object], row: Sequence[object]) -> "RationalMatrix":
        entries = {}
        for i, x in enumerate(column):
            if x:
                for j, y in enumerate(row):
                    if y:
                        entries[(i, j)] = Fraction(x) * Fraction(y)
        return cls(len(column), len(row), entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries.get(key, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self._entries) == dict(other._entries)

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return RationalMatrix(self.rows, self.cols, acc)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c: object) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.rows, self.cols, {k: c * v for k, v in self._entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), u in self._entries.items():
            for j, v in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + u * v
        return RationalMatrix(self.rows, other.cols, acc)

    def apply(self, x: Sequence[object]) -> list[Fraction]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.shape}")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self._entries.items():
            if x[j]:
                out[i] += v * Fraction(x[j])
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        entries = {}
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                v = self[i, j]
                if v:
                    entries[(a, b)] = v
        return RationalMatrix(len(rows), len(cols), entries)

    def is_antisymmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self._entries.get((j, i), 0) == -v for (i, j), v in self._entries.items())

    def integer_rows(self) -> list[dict[int, int]]:
        """Rows scaled by the lcm of their denominators, as ``{col: int}``."""
        rows: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            rows[i][j] = v
        return [_to_integer_row(r) for r in rows]


def _to_integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    if not row:
        return {}
    den = lcm(*(v.denominator for v in row.values()))
    out = {j: int(v * den) for j, v in row.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _eliminate(rows: list[dict[int, int]], rhs_col: int | None = None) -> list[tuple[int, dict[int, int]]]:
    """Fraction-free sparse elimination.

    Returns the pivot rows as ``(pivot_col, row)`` in pivot order. Every pivot
    row is free of the pivot columns of earlier pivots, so the list is upper
    triangular when read back to front. ``rhs_col`` is only used as a pivot
    when nothing else is left in its row.
    """
    live: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for idx, r in enumerate(rows):
        if r:
            live[idx] = dict(r)
            for j in r:
                col_rows.setdefault(j, set()).add(idx)

    heap = [(len(r), idx) for idx, r in live.items()]
    heapq.heapify(heap)
    pivots: list[tuple[int, dict[int, int]]] = []

    while heap:
        length, idx = heapq.heappop(heap)
        row = live.get(idx)
        if row is None or len(row) != length:
            continue
        # smallest pivot by bit length; ties broken by sparsest column
        cands = [j for j in row if j != rhs_col] or list(row)
        pcol = min(cands, key=lambda j: (abs(row[j]).bit_length(), len(col_rows[j]), j))
        pval = row[pcol]
        del live[idx]
        for j in row:
            col_rows[j].discard(idx)
        pivots.append((pcol, row))

        for other in list(col_rows.get(pcol, ())):
            orow = live[other]
            c = orow[pcol]
            g = gcd(pval, c)
            mp, mc = pval // g, c // g
            new: dict[int, int] = {}
            for j, v in orow.items():
                new[j] = v * mp
            for j, v in row.items():
                nv = new.get(j, 0) - v * mc
                if nv:
                    new[j] = nv
                else:
                    new.pop(j, None)
            for j in orow:
                if j not in new:
                    col_rows[j].discard(other)
            for j in new:
                col_rows.setdefault(j, set()).add(other)
            if new:
                cg = 0
                for v in new.values():
                    cg = gcd(cg, v)
                    if cg == 1:
                        break
                if cg > 1:
                    new = {j: v // cg for j, v in new.items()}
                live[other] = new
                heapq.heappush(heap, (len(new), other))
            else:
                del live[other]
    return pivots


def rank(m: RationalMatrix) -> int:
    """Rank over Q by exact elimination."""
    if m.is_zero():
        return 0
    # eliminate along the shorter side
    if m.rows > m.cols:
        m = m.transpose()
    return len(_eliminate(m.integer_rows()))


def kernel_dimension(m: RationalMatrix) -> int:
    return m.cols - rank(m)


def solve(m: RationalMatrix, b: Sequence[object]) -> list[Fraction] | None:
    """One exact solution of ``m @ x == b``, or ``None`` if the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.shape}")
    aug = m.cols
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    for i, v in enumerate(b):
        v = Fraction(v)
        if v:
            rows[i][aug] = v
    pivots = _eliminate([_to_integer_row(r) for r in rows], rhs_col=aug)

    x = [Fraction(0)] * m.cols
    for pcol, row in pivots:
        if pcol == aug:
            return None
    for pcol, row in reversed(pivots):
        acc = Fraction(row.get(aug, 0))
        for j, v in row.items():
            if j != pcol and j != aug:
                acc -= v * x[j]
        x[pcol] = acc / row[pcol]
    return x


def column_vector(values: Iterable[object]) -> list[Fraction]:
    return [Fraction(v) for v in values]
