"""Exact integer and rational matrix algebra: Smith/Hermite normal forms,
kernels, cokernel invariants and determinants.

All integer computations use Python's arbitrary-precision ints; rational ones
use fractions.Fraction.  Everything here is pure and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix, row-major.  Empty dimensions are legal."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable[int]]):
        rows = int(rows)
        cols = int(cols)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"expected {rows}x{cols} entries")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def column(cls, vec: Sequence[int]) -> "IntMatrix":
        return cls(len(vec), 1, [[int(x)] for x in vec])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {list(map(list, self.entries))})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[-x for x in row] for row in self.entries])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose().entries
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in ot]
            for row in self.entries
        ]
        return IntMatrix(self.rows, other.cols, out)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[c * x for x in row] for row in self.entries])

    def column_vec(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column_vec(j) for j in range(self.cols)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(
            self.rows, self.cols + other.cols,
            [list(r1) + list(r2) for r1, r2 in zip(self.entries, other.entries)],
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, list(self.entries) + list(other.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            len(rows), len(cols),
            [[self.entries[i][j] for j in cols] for i in rows],
        )

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        return len([d for d in _diagonal_of_smith(self) if d != 0])

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[_int_json(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        entries = [[int(x) for x in row] for row in obj["entries"]]
        return cls(int(obj["rows"]), int(obj["cols"]), entries)


def _int_json(x: int):
    # JSON numbers are only exact up to 2**53; spill to decimal strings beyond.
    return x if abs(x) < 2 ** 53 else str(x)


@dataclass(frozen=True)
class SmithDecomposition:
    """u * a * v = s with u, v unimodular and s = diag(d1,...), di >= 0, di | di+1."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s.entries[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return len([d for d in self.diagonal() if d != 0])


def _find_pivot(m: list[list[int]], t: int, rows: int, cols: int) -> tuple[int, int] | None:
    # Minimal nonzero absolute value; ties broken by row index, then column.
    best = None
    where = None
    for i in range(t, rows):
        row = m[i]
        for j in range(t, cols):
            x = row[j]
            if x != 0:
                a = -x if x < 0 else x
                if best is None or a < best:
                    best = a
                    where = (i, j)
                    if a == 1:
                        return where
    return where


def smith(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.  Deterministic for fixed input."""
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    t = 0
    limit = min(rows, cols)
    while t < limit:
        pos = _find_pivot(m, t, rows, cols)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            if i0 != t:
                m[t], m[i0] = m[i0], m[t]
                u[t], u[i0] = u[i0], u[t]
            if j0 != t:
                for r in m:
                    r[t], r[j0] = r[j0], r[t]
                for r in v:
                    r[t], r[j0] = r[j0], r[t]
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
                u[t] = [-x for x in u[t]]
            p = m[t][t]
            dirty = False
            for i in range(rows):
                if i != t and m[i][t] != 0:
                    q = m[i][t] // p
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if m[i][t] != 0:
                        dirty = True
            for j in range(cols):
                if j != t and m[t][j] != 0:
                    q = m[t][j] // p
                    if q:
                        for r in m:
                            r[j] -= q * r[t]
                        for r in v:
                            r[j] -= q * r[t]
                    if m[t][j] != 0:
                        dirty = True
            if dirty:
                pos = _find_pivot(m, t, rows, cols)
                continue
            # Pivot row/col are clear; enforce pivot | submatrix before moving on.
            offender = None
            for i in range(t + 1, rows):
                row = m[i]
                for j in range(t + 1, cols):
                    if row[j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
            pos = (t, t)
        t += 1
    return SmithDecomposition(
        IntMatrix(rows, rows, u), IntMatrix(rows, cols, m), IntMatrix(cols, cols, v)
    )


def _diagonal_of_smith(a: IntMatrix) -> tuple[int, ...]:
    return smith(a).diagonal()


def row_hnf(a: IntMatrix) -> IntMatrix:
    """Row Hermite normal form: echelon, positive pivots, entries above a pivot
    reduced into [0, pivot).  Zero rows are dropped; the result is canonical for
    the row lattice of `a`."""
    mat = [list(r) for r in a.entries]
    rows, cols = a.rows, a.cols
    pr = 0
    for col in range(cols):
        nz = [i for i in range(pr, rows) if mat[i][col] != 0]
        while len(nz) > 1:
            i0 = min(nz, key=lambda i: (abs(mat[i][col]), i))
            p = mat[i0][col]
            survivors = [i0]
            for i in nz:
                if i == i0:
                    continue
                q = mat[i][col] // p
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[i0])]
                if mat[i][col] != 0:
                    survivors.append(i)
            nz = survivors
        if not nz:
            continue
        i0 = nz[0]
        mat[pr], mat[i0] = mat[i0], mat[pr]
        if mat[pr][col] < 0:
            mat[pr] = [-x for x in mat[pr]]
        p = mat[pr][col]
        for i in range(pr):
            q = mat[i][col] // p
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[pr])]
        pr += 1
    return IntMatrix(pr, cols, mat[:pr])


def column_hnf(a: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of the column lattice of `a`."""
    return row_hnf(a.transpose()).transpose()


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel, as columns.  The basis is saturated (the
    kernel of an integer matrix is a direct summand) and in column HNF."""
    dec = smith(a)
    r = dec.rank
    cols = [dec.v.column_vec(j) for j in range(r, a.cols)]
    raw = IntMatrix(a.cols, len(cols), [[c[i] for c in cols] for i in range(a.cols)])
    return column_hnf(raw)


def cokernel_invariants(a: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of Z^rows / column-span(a): nontrivial di first, then
    one 0 per unit of free rank."""
    diag = _diagonal_of_smith(a)
    nonzero = [d for d in diag if d != 0]
    free = a.rows - len(nonzero)
    return tuple(d for d in nonzero if d != 1) + (0,) * free


def solve(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """One integer solution x of a*x = b (columnwise), or None."""
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    dec = smith(a)
    r = dec.rank
    diag = dec.diagonal()
    ub = dec.u * b
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        for j in range(b.cols):
            val = ub.entries[i][j]
            if i < r:
                d = diag[i]
                if val % d != 0:
                    return None
                y[i][j] = val // d
            elif val != 0:
                return None
    return dec.v * IntMatrix(a.cols, b.cols, y)


def in_column_span(a: IntMatrix, b: IntMatrix) -> bool:
    return solve(a, b) is not None


class LatticeSolver:
    """Repeated exact solving a*x = b against a fixed matrix `a`.

    Caches the Smith decomposition of `a`, so each solve costs one matrix
    multiply plus divisions."""

    def __init__(self, a: IntMatrix):
        self.a = a
        self._dec = smith(a)
        self._rank = self._dec.rank
        self._diag = self._dec.diagonal()

    def solve(self, b: IntMatrix) -> IntMatrix | None:
        a = self.a
        if a.rows != b.rows:
            raise ValueError("row count mismatch")
        dec = self._dec
        ub = dec.u * b
        y = [[0] * b.cols for _ in range(a.cols)]
        for i in range(a.rows):
            for j in range(b.cols):
                val = ub.entries[i][j]
                if i < self._rank:
                    d = self._diag[i]
                    if val % d != 0:
                        return None
                    y[i][j] = val // d
                elif val != 0:
                    return None
        return dec.v * IntMatrix(a.cols, b.cols, y)

    def contains(self, b: IntMatrix) -> bool:
        return self.solve(b) is not None


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    if a.rows != a.cols:
        raise ValueError("not square")
    x = solve(a, IntMatrix.identity(a.rows))
    if x is None or (a * x) != IntMatrix.identity(a.rows):
        raise ValueError("matrix is not unimodular")
    return x


class RationalMatrix:
    """Immutable matrix over Q (fractions.Fraction entries)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"expected {rows}x{cols} entries")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def from_int_matrix(cls, a: IntMatrix) -> "RationalMatrix":
        return cls(a.rows, a.cols, a.entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {list(map(list, self.entries))})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return RationalMatrix(
            self.rows, other.cols,
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in ot] for row in self.entries],
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.rows, self.cols, [[c * x for x in row] for row in self.entries])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i)
        )


def rational_det(a: RationalMatrix) -> Fraction:
    """Exact determinant over Q; the empty 0x0 determinant is 1."""
    if a.rows != a.cols:
        raise ValueError("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in a.entries]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                factor = m[i][k] * inv
                m[i] = [x - factor * y for x, y in zip(m[i], m[k])]
    return det
