"""Galois structure of K = Q[x]/(f): the roots of f inside K, automorphisms
as exact Q-linear maps, the abstract group table, subgroup classes and fixed
subfields with primitive elements."""

from __future__ import annotations

from fractions import Fraction

from sympy import CRootOf, Poly, symbols, factor_list

from .field import FieldError, NumberField
from .linalg import frac_kernel, frac_solve

_y = symbols("y")


def roots_in_field(k: NumberField) -> list[tuple[Fraction, ...]]:
    """All roots of the defining polynomial inside K; raises if f does not
    split completely (i.e. K/Q is not Galois)."""
    alpha = CRootOf(k.poly.as_expr(), 0)
    factors = factor_list(k.poly.as_expr().subs(k.poly.gen, _y), _y, extension=alpha)[1]
    roots = []
    for p, mult in factors:
        poly = Poly(p, _y)
        if poly.degree() != 1:
            raise FieldError("polynomial does not split in its own field: not Galois")
        lead, const = poly.all_coeffs()
        root_expr = -const / lead
        roots.append(_expr_to_coords(k, root_expr, alpha))
    if len(roots) != k.n:
        raise FieldError("polynomial is not separable of full degree")
    return roots


def _expr_to_coords(k: NumberField, expr, alpha) -> tuple[Fraction, ...]:
    poly = Poly(expr.as_poly(alpha).as_expr(), alpha) if expr.has(alpha) else Poly(expr, alpha)
    coeffs = poly.all_coeffs()[::-1]  # ascending
    out = [Fraction(0)] * k.n
    for i, c in enumerate(coeffs):
        frac = Fraction(c)
        out[i] = frac
    return tuple(out)


class GaloisGroup:
    """Automorphisms of K indexed 0..n-1 with sigma_0 = identity."""

    def __init__(self, k: NumberField):
        self.k = k
        roots = roots_in_field(k)
        gen = k.gen()
        # identity first, then deterministic order by coordinate tuples
        others = sorted((r for r in roots if r != gen))
        self.roots = [gen] + others
        self.maps = [self._map_matrix(r) for r in self.roots]
        self.order = len(self.roots)
        self.table = self._build_table()
        self.inverse = [row.index(0) for row in self.table]

    def _map_matrix(self, root) -> list[list[Fraction]]:
        cols = []
        cur = self.k.one()
        for _ in range(self.k.n):
            cols.append(cur)
            cur = self.k.mul(cur, root)
        return [[cols[j][i] for j in range(self.k.n)] for i in range(self.k.n)]

    def apply(self, g: int, elem):
        m = self.maps[g]
        n = self.k.n
        return tuple(
            sum((m[i][j] * elem[j] for j in range(n) if elem[j]), Fraction(0))
            for i in range(n)
        )

    def _build_table(self):
        index = {self.roots[i]: i for i in range(len(self.roots))}
        table = []
        for a in range(len(self.roots)):
            row = []
            for b in range(len(self.roots)):
                # (sigma_a o sigma_b)(alpha) = sigma_a(root_b)
                row.append(index[self.apply(a, self.roots[b])])
            table.append(row)
        return table

    def mul(self, a, b):
        return self.table[a][b]

    # -- subgroups ------------------------------------------------------------

    def generated(self, gens) -> tuple[int, ...]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    def all_subgroups(self) -> list[tuple[int, ...]]:
        found = {self.generated([a]) for a in range(self.order)}
        while True:
            new = set()
            items = list(found)
            for i, s in enumerate(items):
                for t in items[:i]:
                    if set(s) <= set(t) or set(t) <= set(s):
                        continue
                    j = self.generated(list(set(s) | set(t)))
                    if j not in found:
                        new.add(j)
            if not new:
                break
            found |= new
        return sorted(found, key=lambda e: (len(e), e))

    def conjugacy_classes(self) -> list[list[tuple[int, ...]]]:
        subs = self.all_subgroups()
        seen = {}
        classes = []
        for s in subs:
            if s in seen:
                continue
            orbit = set()
            for g in range(self.order):
                gi = self.inverse[g]
                orbit.add(tuple(sorted(self.table[self.table[g][a]][gi] for a in s)))
            orbit = sorted(orbit)
            for o in orbit:
                seen[o] = len(classes)
            classes.append(orbit)
        return classes

    # -- fixed subfields --------------------------------------------------------

    def fixed_subfield(self, subgroup: tuple[int, ...]):
        """Q-basis (as K-elements) of the fixed field of the subgroup."""
        n = self.k.n
        stacked = []
        for g in subgroup:
            if g == 0:
                continue
            m = self.maps[g]
            for i in range(n):
                row = [m[i][j] - (1 if i == j else 0) for j in range(n)]
                stacked.append(row)
        if not stacked:
            return [tuple(Fraction(1 if i == j else 0) for i in range(n)) for j in range(n)]
        basis = frac_kernel(stacked)
        return [tuple(v) for v in basis]


def primitive_element(k: NumberField, basis, degree: int):
    """Primitive element of the subfield spanned by `basis`, made integral,
    plus its monic integral minimal polynomial (as coefficient list, ascending
    excluding the leading 1)."""
    candidates = []
    for b in basis:
        candidates.append(b)
    # deterministic small combinations
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(k.add(basis[i], basis[j]))
            candidates.append(k.add(basis[i], k.scal(2, basis[j])))
            candidates.append(k.sub(basis[i], basis[j]))
    for i in range(len(basis)):
        for j in range(len(basis)):
            for l in range(len(basis)):
                if len({i, j, l}) == 3:
                    candidates.append(k.add(basis[i], k.add(k.scal(2, basis[j]), k.scal(3, basis[l]))))
    for cand in candidates:
        theta = _clear_denominators(k, cand)
        minpoly = _minimal_polynomial(k, theta)
        if len(minpoly) - 1 == degree:
            return theta, minpoly
    raise FieldError("no primitive element found for subfield")


def _clear_denominators(k: NumberField, elem):
    from math import lcm

    den = 1
    for c in elem:
        den = lcm(den, c.denominator)
    scaled = k.scal(den, elem)
    # make integral (power-basis integer vectors are algebraic integers only
    # for monic integral f, which parse_poly guarantees)
    return scaled


def _minimal_polynomial(k: NumberField, theta) -> list[Fraction]:
    """Monic minimal polynomial of theta over Q, ascending coefficients
    including the leading 1."""
    powers = [k.one()]
    for _ in range(k.n):
        powers.append(k.mul(powers[-1], theta))
    for deg in range(1, k.n + 1):
        # solve sum_{i<deg} c_i theta^i = -theta^deg
        mat = [[powers[i][row] for i in range(deg)] for row in range(k.n)]
        rhs = [[-powers[deg][row]] for row in range(k.n)]
        sol = _overdetermined_solve(mat, rhs)
        if sol is not None:
            return [Fraction(c) for c in sol] + [Fraction(1)]
    raise FieldError("minimal polynomial computation failed")


def _overdetermined_solve(mat, rhs):
    """Solve an overdetermined consistent system over Q, or None."""
    rows = len(mat)
    cols = len(mat[0]) if mat else 0
    m = [[Fraction(mat[i][j]) for j in range(cols)] + [Fraction(rhs[i][0])] for i in range(rows)]
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
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    if len(pivots) != cols:
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = m[i][cols]
    return sol
