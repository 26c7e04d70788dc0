"""Sparse vectors and matrices over an exact field, plus an incremental echelon form.

Vectors are plain ``dict[int, coefficient]`` with no stored zeros.  Matrices
keep one such dict per column because almost every consumer applies them to
vectors.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping

from .field import Field


def axpy(F: Field, y: dict, a, x: Mapping) -> dict:
    """In place ``y += a * x``; returns ``y``."""
    if a == 0:
        return y
    for k, v in x.items():
        s = F.add(y.get(k, F.zero), F.mul(a, v))
        if s == 0:
            y.pop(k, None)
        else:
            y[k] = s
    return y


def scaled(F: Field, a, x: Mapping) -> dict:
    if a == 0:
        return {}
    out = {}
    for k, v in x.items():
        s = F.mul(a, v)
        if s != 0:
            out[k] = s
    return out


class SparseMatrix:
    """``rows x cols`` matrix stored column-wise."""

    __slots__ = ("rows", "cols", "field", "_columns")

    def __init__(self, rows: int, cols: int, field: Field, columns: Iterable[Mapping] | None = None):
        self.rows = rows
        self.cols = cols
        self.field = field
        if columns is None:
            cs = [dict() for _ in range(cols)]
        else:
            cs = []
            for c in columns:
                col = {}
                for r, v in c.items():
                    v = field(v)
                    if v != 0:
                        if not 0 <= r < rows:
                            raise IndexError(f"row index {r} out of range for {rows} rows")
                        col[r] = v
                cs.append(col)
            if len(cs) != cols:
                raise ValueError(f"expected {cols} columns, got {len(cs)}")
        self._columns = tuple(cs)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object], field: Field):
        columns = [dict() for _ in range(cols)]
        for (r, c), v in entries.items():
            if not 0 <= c < cols:
                raise IndexError(f"column index {c} out of range for {cols} columns")
            columns[c][r] = v
        return cls(rows, cols, field, columns)

    @classmethod
    def from_dense(cls, dense, field: Field, cols: int | None = None):
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        entries = {(r, c): v for r, row in enumerate(dense) for c, v in enumerate(row) if v}
        return cls.from_entries(rows, cols, entries, field)

    @classmethod
    def identity(cls, n: int, field: Field):
        return cls(n, n, field, [{i: field.one} for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field):
        return cls(rows, cols, field)

    def column(self, j: int) -> dict:
        return self._columns[j]

    @property
    def columns(self) -> tuple:
        return self._columns

    @property
    def entries(self) -> dict:
        return {(r, c): v for c, col in enumerate(self._columns) for r, v in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def is_zero(self) -> bool:
        return all(not c for c in self._columns)

    def apply(self, vec: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for j, a in vec.items():
            axpy(F, out, a, self._columns[j])
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return SparseMatrix(self.rows, other.cols, self.field, [self.apply(c) for c in other._columns])

    def _combine(self, other: "SparseMatrix", a) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        F = self.field
        return SparseMatrix(self.rows, self.cols, F,
                            [axpy(F, dict(x), a, y) for x, y in zip(self._columns, other._columns)])

    def __add__(self, other):
        return self._combine(other, self.field.one)

    def __sub__(self, other):
        return self._combine(other, self.field.neg(self.field.one))

    def scale(self, a) -> "SparseMatrix":
        F = self.field
        return SparseMatrix(self.rows, self.cols, F, [scaled(F, F(a), c) for c in self._columns])

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(self.cols, self.rows,
                                         {(c, r): v for (r, c), v in self.entries.items()}, self.field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> list[list]:
        F = self.field
        out = [[F.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def rank(self) -> int:
        ech = Echelon(self.field)
        for c in self._columns:
            ech.add(c)
        return ech.rank

    def kernel(self) -> list[dict]:
        """Basis of the null space, as sparse vectors over the column index."""
        ech = Echelon(self.field)
        out = []
        for j, c in enumerate(self._columns):
            rem, tag = ech.add(c, {j: self.field.one})
            if not rem:
                out.append(tag)
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, {self.field.name})"


class Echelon:
    """Incrementally maintained echelon basis with tracked combinations.

    Each stored row has a pivot equal to its smallest index, normalized to 1,
    and carries a ``tag`` vector recording which inputs it was built from.
    Eliminating a pivot only introduces larger indices, so reduction walks the
    indices of a vector in increasing order.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, tuple[dict, dict]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping, tag: Mapping | None = None) -> tuple[dict, dict]:
        """Return ``(remainder, combination)`` with ``vec = remainder + sum c_k row_k``.

        ``combination`` is the matching sum of row tags (``sum c_k tag_k``).
        """
        F = self.field
        v = dict(vec)
        acc: dict = {}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if c is None or k not in self.rows:
                continue
            row, rtag = self.rows[k]
            neg = F.neg(c)
            for idx, val in row.items():
                s = F.add(v.get(idx, F.zero), F.mul(neg, val))
                if s == 0:
                    v.pop(idx, None)
                else:
                    if idx not in v and idx not in seen:
                        heapq.heappush(heap, idx)
                    v[idx] = s
            axpy(F, acc, c, rtag)
        return v, acc

    def add(self, vec: Mapping, tag: Mapping | None = None) -> tuple[dict, dict]:
        """Insert a vector.  Returns ``(remainder, remainder_tag)``.

        An empty remainder means ``vec`` was dependent; its tag is then a
        relation ``tag - combination`` expressing a kernel element.
        """
        F = self.field
        rem, comb = self.reduce(vec)
        rtag = dict(tag) if tag else {}
        axpy(F, rtag, F.neg(F.one), comb)
        if rem:
            p = min(rem)
            inv = F.inv(rem[p])
            self.rows[p] = (scaled(F, inv, rem), scaled(F, inv, rtag))
        return rem, rtag

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]


def rank_of_vectors(field: Field, vectors: Iterable[Mapping]) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank
