"""Exact linear algebra over the rationals.

Everything here works on integer rows internally: each input row is scaled
by the lcm of its denominators, and elimination keeps rows primitive (content
one) so intermediate entries stay small.  Pivots are chosen as the first
nonzero column, which makes echelon forms and nullspace bases reproducible.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class Matrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        self.data = [[x if type(x) is Fraction or type(x) is int else Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise ValueError("ragged matrix: every row needs %d entries" % cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length %d != %d" % (len(c), rows))
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.data]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.data, self.cols) if self.rows else Matrix.zeros(self.cols, 0)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length %d != %d columns" % (len(v), self.cols))
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum((row[j] * x for j, x in nz), Fraction(0)) for row in self.data]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %r @ %r" % (self, other))
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(cols, self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * x for x in row] for row in self.data], self.cols)

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


# -- integer row kernel -------------------------------------------------------

def _int_row(vec: Iterable) -> dict[int, int]:
    """Sparse primitive integer row proportional to ``vec``."""
    items = [(j, x if type(x) is Fraction else Fraction(x)) for j, x in enumerate(vec) if x]
    if not items:
        return {}
    den = lcm(*(x.denominator for _, x in items))
    row = {j: int(x * den) for j, x in items}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        row = {j: x // g for j, x in row.items()}
    return row


def _combine(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Eliminate ``col`` from ``row`` using ``piv`` (fraction-free)."""
    p, a = piv[col], row[col]
    g = gcd(p, a)
    p, a = p // g, a // g
    out = {j: p * x for j, x in row.items()} if p != 1 else dict(row)
    for j, x in piv.items():
        y = out.get(j, 0) - a * x
        if y:
            out[j] = y
        else:
            out.pop(j, None)
    return _primitive(out)


class RowSpace:
    """Incremental row-echelon basis of a subspace of Q^n.

    Rows are kept keyed by their leading (pivot) column.  ``add`` reports
    whether a vector enlarged the span; ``contains`` and ``reduce`` never
    mutate the basis.
    """

    def __init__(self, n: int):
        self.n = n
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self.pivots
        todo = [j for j in row if j in pivots]
        heapq.heapify(todo)
        while todo:
            col = heapq.heappop(todo)
            if col not in row:
                continue
            prow = pivots[col]
            row = _combine(row, prow, col)
            for j in prow:
                if j != col and j in pivots and j in row:
                    heapq.heappush(todo, j)
        return row

    def _check(self, vec) -> None:
        if len(vec) != self.n:
            raise ValueError("vector length %d != ambient dimension %d" % (len(vec), self.n))

    def add(self, vec: Sequence) -> bool:
        self._check(vec)
        row = self._reduce(_int_row(vec))
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def contains(self, vec: Sequence) -> bool:
        self._check(vec)
        return not self._reduce(_int_row(vec))

    def extend(self, vecs: Iterable[Sequence]) -> "RowSpace":
        for v in vecs:
            self.add(v)
        return self


def _echelon(m: Matrix) -> dict[int, dict[int, int]]:
    space = RowSpace(m.cols)
    for row in m.data:
        space.add(row)
    return space.pivots


def reduced_rows(pivots: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    """Clear every pivot column above and below its pivot."""
    rows = dict(pivots)
    order = sorted(rows)
    for col in reversed(order):
        prow = rows[col]
        for other in order:
            if other != col and col in rows[other]:
                rows[other] = _combine(rows[other], prow, col)
    return rows


# -- public operations --------------------------------------------------------

def rank(m: Matrix) -> int:
    if m.rows > m.cols:
        m = m.transpose()
    return len(_echelon(m))


def nullspace_basis(m: Matrix) -> list[list[int]]:
    """Integer basis of ``{v : m v = 0}``, one vector per free column.

    Each vector has content one and a positive first nonzero entry; free
    columns are taken in increasing order.
    """
    rows = reduced_rows(_echelon(m))
    basis = []
    for j in range(m.cols):
        if j in rows:
            continue
        deps = [(pc, r) for pc, r in rows.items() if j in r]
        scale = lcm(*(r[pc] for pc, r in deps)) if deps else 1
        if scale < 0:
            scale = -scale
        v = [0] * m.cols
        v[j] = scale
        for pc, r in deps:
            v[pc] = -r[j] * scale // r[pc]
        g = 0
        for x in v:
            g = gcd(g, x)
        if next(x for x in v if x) < 0:
            g = -g
        basis.append([x // g for x in v])
    return basis


def solve(m: Matrix, b: Sequence) -> list[Fraction] | None:
    """A particular solution of ``m x = b`` (free variables zero), or None."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length %d != %d rows" % (len(b), m.rows))
    aug = Matrix([list(row) + [bi] for row, bi in zip(m.data, b)], m.cols + 1)
    rows = reduced_rows(_echelon(aug))
    if m.cols in rows:
        return None
    x = [Fraction(0)] * m.cols
    for pc, r in rows.items():
        x[pc] = Fraction(r.get(m.cols, 0), r[pc])
    return x


def in_affine(v: Sequence, basis: Sequence[Sequence], subspace: Sequence[Sequence]) -> list[Fraction] | None:
    """Coefficients c with ``v - sum c_i basis_i`` in span(subspace), or None."""
    n = len(v)
    for w in list(basis) + list(subspace):
        if len(w) != n:
            raise ValueError("dimension mismatch: %d vs %d" % (len(w), n))
    cols = list(basis) + list(subspace)
    if not cols:
        return [] if all(x == 0 for x in v) else None
    x = solve(Matrix.from_columns(cols, n), v)
    return None if x is None else x[: len(basis)]


def span_rank(vectors: Sequence[Sequence], n: int) -> int:
    return RowSpace(n).extend(vectors).dim
