"""The compute core of the bundled CAS: given a defining polynomial of a
Galois number field, produce the Galois group, per-subgroup-class subfield
invariants (class number, roots of unity, regulator, unit Grams on the places
of the top field) and the orbit structure of the archimedean places."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy
from sympy import Poly, QQ

from ..engine.field import FieldError, NumberField, parse_poly
from ..engine.galois import GaloisGroup, primitive_element
from ..engine.invariants import (
    class_number,
    fundamental_unit_rank1,
    regulator_own_places,
    roots_of_unity,
)
from ..engine.quadratic import quadratic_invariants
from ..engine.s3units import s3_sextic_units

_x = sympy.symbols("x")
DPS = 60


def _subfield_from_minpoly(minpoly) -> NumberField:
    expr = sum(int(c) * _x ** i for i, c in enumerate(minpoly))
    return NumberField(Poly(expr, _x, domain=QQ))


def _embed(k: NumberField, theta, coords):
    out = k.zero()
    power = k.one()
    for c in coords:
        out = k.add(out, k.scal(c, power))
        power = k.mul(power, theta)
    return out


def _quadratic_unit_coords(f2: NumberField, qinv) -> tuple:
    """Fundamental unit of a real quadratic field as power-basis coordinates
    for f2 = Q[y]/(y^2 + p y + q)."""
    x_pell, y_pell = qinv["unit_xy"]
    d = f2.disc
    coeffs = f2.poly.all_coeffs()  # [1, p, q]
    p, q = int(coeffs[1]), int(coeffs[2])
    m2 = (p * p - 4 * q) // d
    m = int(mpmath.sqrt(m2))
    assert m * m * d == p * p - 4 * q
    # sqrt(d) = (2y + p)/m, unit = (x + y_pell sqrt(d))/2
    c0 = Fraction(x_pell, 2) + Fraction(y_pell * p, 2 * m)
    c1 = Fraction(y_pell, m)
    unit = (c0, c1)
    assert abs(f2.norm(unit)) == 1, "quadratic unit reconstruction failed"
    return unit


def _places(k: NumberField, dps: int):
    """(embedding index, local degree) per archimedean place, pairing
    conjugate embeddings."""
    embs = k.embeddings(dps)
    eps = mpmath.mpf(10) ** (-dps // 2)
    places = []
    used = set()
    for i, r in enumerate(embs):
        if i in used:
            continue
        if abs(r.imag) < eps:
            places.append((i, 1))
            used.add(i)
        else:
            j = next(
                jj for jj, s in enumerate(embs)
                if jj not in used and jj != i and abs(s - mpmath.conj(r)) < eps
            )
            places.append((i, 2))
            used.update((i, j))
    return places, embs


def _galois_on_embeddings(k: NumberField, gal: GaloisGroup, embs, dps):
    """perm[g][i] = j when e_i o sigma_g = e_j as embeddings of K."""
    eps = mpmath.mpf(10) ** (-dps // 3)
    perms = []
    for g in range(gal.order):
        row = []
        for i in range(k.n):
            val = k.eval_at(gal.roots[g], embs[i])
            j = min(range(k.n), key=lambda t: abs(embs[t] - val))
            assert abs(embs[j] - val) < eps, "embedding permutation mismatch"
            row.append(j)
        perms.append(row)
    return perms


def compute(poly_text: str, precision: int = 30) -> dict:
    with mpmath.workdps(DPS):
        k = NumberField(parse_poly(poly_text))
        gal = GaloisGroup(k)
        classes = gal.conjugacy_classes()
        w_top, _zeta_top = roots_of_unity(k)
        places, embs = _places(k, DPS)
        perms = _galois_on_embeddings(k, gal, embs, DPS)

        def fmt(x):
            return mpmath.nstr(mpmath.mpf(x), precision, strip_zeros=False)

        # order classes by decreasing subgroup order so subfields come first
        order_idx = sorted(range(len(classes)), key=lambda i: -len(classes[i][0]))
        results: dict[int, dict] = {}
        subfield_cache: dict[int, dict] = {}
        for idx in order_idx:
            rep = classes[idx][0]
            degree = k.n // len(rep)
            entry: dict = {
                "rep": list(rep),
                "order": len(rep),
                "class_size": len(classes[idx]),
            }
            if degree == 1:
                entry.update(h=1, w=2, reg="1", unit_gram=[], subfield_poly=[0, 1])
                units_in_k: list = []
            elif degree == k.n:
                data = _top_field_invariants(k, gal, subfield_cache, w_top, _zeta_top)
                entry.update(
                    h=data["h"], w=data["w"], reg=fmt(data["reg"]),
                    subfield_poly=[int(c) for c in k.poly.all_coeffs()[::-1]],
                )
                units_in_k = data["units"]
            else:
                basis = gal.fixed_subfield(rep)
                theta, minpoly = primitive_element(k, basis, degree)
                sub = _subfield_from_minpoly(minpoly)
                if degree == 2:
                    qinv = quadratic_invariants(sub.disc)
                    if sub.disc < 0:
                        units_sub: list = []
                        reg = mpmath.mpf(1)
                    else:
                        units_sub = [_quadratic_unit_coords(sub, qinv)]
                        reg = regulator_own_places(sub, units_sub, DPS)
                    entry.update(h=qinv["h"], w=qinv["w"])
                else:
                    h = class_number(sub)
                    w_sub, _ = roots_of_unity(sub)
                    rank = sub.unit_rank()
                    if rank == 0:
                        units_sub = []
                    elif rank == 1:
                        units_sub = [fundamental_unit_rank1(sub)]
                    else:
                        raise FieldError(
                            f"unit rank {rank} subfield of degree {degree} unsupported"
                        )
                    reg = regulator_own_places(sub, units_sub, DPS)
                    entry.update(h=h, w=w_sub)
                entry["reg"] = fmt(reg)
                entry["subfield_poly"] = [int(c) for c in minpoly]
                units_in_k = [_embed(k, theta, u) for u in units_sub]
                subfield_cache[degree] = {
                    "field": sub, "units": units_sub, "reg": reg,
                    "h": entry["h"], "w": entry["w"], "theta": theta,
                }
            for u in units_in_k:
                assert abs(k.norm(u)) == 1
            gram = []
            for u in units_in_k:
                row = []
                for v in units_in_k:
                    total = mpmath.mpf(0)
                    for i, d in places:
                        total += d * mpmath.log(abs(k.eval_at(u, embs[i]))) * mpmath.log(
                            abs(k.eval_at(v, embs[i]))
                        )
                    row.append(fmt(total))
                gram.append(row)
            entry["unit_gram"] = gram
            results[idx] = entry

        s_orbits = _place_orbits(k, gal, classes, places, perms)
        return {
            "poly": poly_text,
            "degree": k.n,
            "disc": k.disc,
            "table": [list(r) for r in gal.table],
            "classes": [results[i] for i in range(len(classes))],
            "s_orbits": s_orbits,
        }


def _top_field_invariants(k, gal, subfield_cache, w_top, zeta_top) -> dict:
    h = class_number(k)
    rank = k.unit_rank()
    if rank == 0:
        units: list = []
        reg = mpmath.mpf(1)
    elif rank == 1:
        units = [fundamental_unit_rank1(k)]
        reg = regulator_own_places(k, units, DPS)
    elif rank == 2 and k.n == 6 and 3 in subfield_cache and 2 in subfield_cache:
        cubic = subfield_cache[3]
        quad = subfield_cache[2]
        cubic_in_k = _embed(k, cubic["theta"], cubic["units"][0])
        units, reg = s3_sextic_units(
            k, gal, cubic_in_k, h, w_top, zeta_top,
            {"h": cubic["h"], "R": cubic["reg"], "w": cubic["w"], "disc": cubic["field"].disc},
            {"h": quad["h"], "w": quad["w"], "disc": quad["field"].disc},
            dps=DPS,
        )
    else:
        raise FieldError(f"unit rank {rank} top field unsupported in this engine")
    return {"h": h, "w": w_top, "reg": reg, "units": units}


def _place_orbits(k, gal, classes, places, perms) -> list[int]:
    class_lookup = {}
    for idx, cls in enumerate(classes):
        for sub in cls:
            class_lookup[tuple(sub)] = idx
    place_of_embedding = {}
    for p_idx, (i, d) in enumerate(places):
        place_of_embedding[i] = p_idx
    # complete the map with conjugate embeddings
    embs = k.embeddings(DPS)
    eps = mpmath.mpf(10) ** (-DPS // 2)
    for i, r in enumerate(embs):
        if i in place_of_embedding:
            continue
        j = next(
            jj for jj, _d in places
            if abs(embs[jj] - mpmath.conj(r)) < eps or abs(embs[jj] - r) < eps
        )
        place_of_embedding[i] = place_of_embedding[j]
    n_places = len(places)
    orbits = []
    seen = set()
    for p_idx, (i, d) in enumerate(places):
        if p_idx in seen:
            continue
        orbit = set()
        stab = []
        for g in range(gal.order):
            target = place_of_embedding[perms[g][i]]
            orbit.add(target)
            if target == p_idx:
                stab.append(g)
        seen |= orbit
        stab_sub = _closure(gal, stab)
        orbits.append(class_lookup[stab_sub])
        assert len(orbit) * len(stab_sub) == gal.order
    return orbits


def _closure(gal, gens) -> tuple[int, ...]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = gal.table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen))
