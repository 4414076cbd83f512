"""Small exact linear algebra helpers for the fixture engine: Fraction
Gaussian elimination and integer column HNF.  Self-contained on purpose; the
engine must not depend on the verification package it feeds."""

from __future__ import annotations

from fractions import Fraction


def frac_solve(a: list[list[Fraction]], b: list[list[Fraction]]):
    """Solve a x = b over Q (a square, invertible); returns x or None."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(x) for x in brow] for row, brow in zip(a, b)]
    w = len(b[0]) if b else 0
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return None
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [[m[i][n + j] for j in range(w)] for i in range(n)]


def frac_det(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return det


def frac_kernel(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel of a over Q (list of column vectors)."""
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def column_hnf_int(cols: list[list[int]], dim: int) -> list[list[int]]:
    """Canonical basis (columns) of the integer lattice generated by `cols`."""
    rows = [list(c) for c in cols]  # work on the transpose: rows = generators
    pr = 0
    n = len(rows)
    for c in range(dim):
        nz = [i for i in range(pr, n) if rows[i][c] != 0]
        while len(nz) > 1:
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            p = rows[i0][c]
            keep = [i0]
            for i in nz:
                if i == i0:
                    continue
                q = rows[i][c] // p
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[i0])]
                if rows[i][c] != 0:
                    keep.append(i)
            nz = keep
        if not nz:
            continue
        i0 = nz[0]
        rows[pr], rows[i0] = rows[i0], rows[pr]
        if rows[pr][c] < 0:
            rows[pr] = [-x for x in rows[pr]]
        p = rows[pr][c]
        for i in range(pr):
            q = rows[i][c] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
        pr += 1
    return rows[:pr]
