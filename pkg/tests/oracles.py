"""Independent oracles used by the tests.

These recompute quantities by definitions or brute force, deliberately
avoiding the production code paths they are checking: cohomology via literal
inhomogeneous bar cochains, fixed points by enumerating module elements,
determinants by cofactor expansion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from brauerreg.exactlinalg import IntMatrix, smith
from brauerreg.fpabelian import homology_group
from brauerreg.gmodules import GModule, restricted_module
from brauerreg.groups import Subgroup


def cofactor_det(rows) -> Fraction:
    """Determinant by recursive cofactor expansion (exact, exponential)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(rows[0][j]) * cofactor_det(minor)
    return total


def _bar_differential(group, m: GModule, i: int) -> IntMatrix:
    """The literal inhomogeneous bar differential d^i: M^(|H|^i) -> M^(|H|^i+1),
    (df)(h1..h_{i+1}) = h1 f(h2..) + sum (-1)^j f(.., h_j h_{j+1}, ..)
                        + (-1)^{i+1} f(h1..h_i)."""
    o = group.order
    n = m.gens
    src_tuples = list(product(range(o), repeat=i))
    tgt_tuples = list(product(range(o), repeat=i + 1))
    src_index = {t: k for k, t in enumerate(src_tuples)}
    entries = [[0] * (len(src_tuples) * n) for _ in range(len(tgt_tuples) * n)]

    def add_block(tk, sk, mat, sign):
        for a in range(n):
            for b in range(n):
                entries[tk * n + a][sk * n + b] += sign * mat.entries[a][b]

    ident = IntMatrix.identity(n)
    for tk, tup in enumerate(tgt_tuples):
        add_block(tk, src_index[tup[1:]], m.action[tup[0]], 1)
        for j in range(1, i + 1):
            merged = tup[: j - 1] + (group.mul(tup[j - 1], tup[j]),) + tup[j + 1 :]
            add_block(tk, src_index[merged], ident, -1 if j % 2 else 1)
        add_block(tk, src_index[tup[:-1]], ident, -1 if (i + 1) % 2 else 1)
    return IntMatrix(len(tgt_tuples) * n, len(src_tuples) * n, entries)


def bar_cohomology(h: Subgroup, m: GModule, i: int) -> tuple[int, ...]:
    """H^i(H, M) straight from the bar-cochain definition (small inputs only)."""
    y_abs, _ = h.as_group()
    m_res = restricted_module(m, h)
    o = y_abs.order
    n = m.gens

    def rels_at(copies: int) -> IntMatrix:
        out = [[0] * (m.rels.cols * copies) for _ in range(n * copies)]
        for c in range(copies):
            for a in range(n):
                for b in range(m.rels.cols):
                    out[c * n + a][c * m.rels.cols + b] = m.rels.entries[a][b]
        return IntMatrix(n * copies, m.rels.cols * copies, out)

    d_out = _bar_differential(y_abs, m_res, i)
    d_in = _bar_differential(y_abs, m_res, i - 1) if i >= 1 else None
    group = homology_group(d_in, d_out, rels_at(o ** i), rels_at(o ** (i + 1)))
    return group.invariants()


def module_elements(m: GModule):
    """All elements of a finite module in Smith coordinates: (coords, moduli,
    transform) with x in Z^gens represented by U^-1 y."""
    dec = smith(m.rels)
    diag = dec.diagonal()
    n = m.gens
    assert dec.rank == n, "module must be finite"
    return diag, dec


def count_fixed_points(m: GModule, h: Subgroup) -> int:
    """|M^H| for finite M by enumerating all elements (|M| <= ~100000)."""
    diag, dec = module_elements(m)
    n = m.gens
    total = 1
    for d in diag:
        total *= d
    assert total <= 100000, "module too large for brute force"
    from brauerreg.exactlinalg import unimodular_inverse

    u_inv = unimodular_inverse(dec.u)
    mats = []
    for a in h.elements:
        if a == 0:
            continue
        mats.append(dec.u * m.action[a] * u_inv)
    count = 0
    for coords in product(*(range(d) for d in diag)):
        ok = True
        for mat in mats:
            for i in range(n):
                acc = sum(mat.entries[i][j] * coords[j] for j in range(n))
                if (acc - coords[i]) % diag[i] != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def closure_by_hand(degree: int, perms) -> int:
    """Order of the closure of permutations, by plain set saturation."""
    elems = {tuple(range(degree))}
    gens = [tuple(p) for p in perms]
    while True:
        new = set()
        for p in elems:
            for q in gens:
                r = tuple(p[x] for x in q)
                if r not in elems:
                    new.add(r)
        if not new:
            return len(elems)
        elems |= new
