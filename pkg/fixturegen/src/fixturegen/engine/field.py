"""Exact arithmetic in a number field K = Q[x]/(f) on the power basis, with
the maximal order from sympy's round_two, embeddings via mpmath and element
norms over Q.  Elements are tuples of Fractions of length deg(f)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import Poly, QQ, symbols
from sympy.polys.numberfields.basis import round_two

from .linalg import frac_det, frac_solve

_x = symbols("x")


class FieldError(ValueError):
    pass


def parse_poly(text: str) -> Poly:
    try:
        poly = Poly(text.replace("^", "**"), _x, domain=QQ)
    except Exception as exc:
        raise FieldError(f"cannot parse polynomial {text!r}: {exc}") from exc
    if poly.degree() < 1:
        raise FieldError("polynomial must be nonconstant")
    if poly.LC() != 1 or any(c.denominator != 1 for c in poly.all_coeffs()):
        raise FieldError("polynomial must be monic with integer coefficients")
    if not poly.is_irreducible:
        raise FieldError("polynomial must be irreducible over Q")
    return poly


class NumberField:
    """Q[x]/(f) with exact power-basis arithmetic and the maximal order."""

    def __init__(self, poly: Poly):
        self.poly = poly
        self.n = poly.degree()
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in poly.all_coeffs()]
        self._neg_tail = [-c for c in coeffs[1:]]  # x^n = -(a_{n-1}x^{n-1}+...)
        zk, disc = round_two(poly)
        self.disc = int(disc)
        # integral basis as columns over the power basis, entries in (1/denom)Z
        denom = int(zk.denom)
        mat = zk.matrix.to_Matrix()
        self.basis = [
            tuple(Fraction(int(mat[i, j]), denom) for i in range(self.n))
            for j in range(self.n)
        ]
        self._emb_cache: dict[int, list] = {}

    # -- element arithmetic (power-basis tuples of Fractions) ---------------

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.n))

    def one(self):
        return tuple(Fraction(1 if i == 0 else 0) for i in range(self.n))

    def gen(self):
        return tuple(Fraction(1 if i == 1 else 0) for i in range(self.n))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scal(self, c, a):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def mul(self, a, b):
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        # reduce degrees >= n using x^n = neg_tail (ascending: neg_tail[k] is
        # the coefficient of x^{n-1-k}); store tail in ascending order instead
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                prod[d] = Fraction(0)
                for k in range(n):
                    prod[d - n + k] += c * self._tail_asc[k]
        return tuple(prod[:n])

    @property
    def _tail_asc(self):
        # ascending coefficients of x^n mod f
        if not hasattr(self, "_tail_asc_cached"):
            self._tail_asc_cached = list(reversed(self._neg_tail))
        return self._tail_asc_cached

    def power(self, a, k: int):
        out = self.one()
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def mult_matrix(self, a) -> list[list[Fraction]]:
        """Matrix of y -> a*y on the power basis (columns are a*x^i)."""
        cols = []
        cur = self.one()
        for _ in range(self.n):
            cols.append(self.mul(a, cur))
            cur = self.mul(cur, self.gen())
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def norm(self, a) -> Fraction:
        return frac_det(self.mult_matrix(a))

    def trace(self, a) -> Fraction:
        m = self.mult_matrix(a)
        return sum((m[i][i] for i in range(self.n)), Fraction(0))

    # -- integral coordinates -------------------------------------------------

    def to_integral(self, a):
        """Coordinates of `a` in the integral basis, or None if not integral."""
        mat = [[self.basis[j][i] for j in range(self.n)] for i in range(self.n)]
        sol = frac_solve(mat, [[x] for x in a])
        if sol is None:
            return None
        coords = [s[0] for s in sol]
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def from_integral(self, coords):
        out = self.zero()
        for c, b in zip(coords, self.basis):
            if c:
                out = self.add(out, self.scal(c, b))
        return out

    def is_integral(self, a) -> bool:
        return self.to_integral(a) is not None

    # -- embeddings ------------------------------------------------------------

    def embeddings(self, dps: int):
        """Complex roots of f at working precision, deterministically ordered
        by (rounded real part, rounded imaginary part)."""
        if dps not in self._emb_cache:
            with mpmath.workdps(dps + 20):
                coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator)
                          for c in (Fraction(int(q.numerator), int(q.denominator))
                                    for q in self.poly.all_coeffs())]
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
                roots = sorted((mpmath.mpc(r) for r in roots), key=lambda r: (r.real, r.imag))
            self._emb_cache[dps] = [mpmath.mpc(r) for r in roots]
        return self._emb_cache[dps]

    def eval_at(self, a, root):
        out = mpmath.mpc(0)
        for c in reversed(a):
            out = out * root + mpmath.mpf(int(c.numerator)) / int(c.denominator)
        return out

    def signature(self) -> tuple[int, int]:
        r1 = len(self.poly.real_roots())
        return r1, (self.n - r1) // 2

    def unit_rank(self) -> int:
        r1, r2 = self.signature()
        return r1 + r2 - 1
