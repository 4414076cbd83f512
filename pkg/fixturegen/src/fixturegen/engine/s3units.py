"""Unit group of a totally imaginary S3 sextic: start from the Galois
conjugates of the cubic subfield's fundamental unit, pin the true regulator by
the exact Artin residue identity

    h6 R6 = 4 h2 h3^2 R3^2 w6 sqrt|d6| / (w2 w3^2 sqrt|d2| |d3|)

(from zeta_K = zeta L(chi_2) L(rho)^2 and zeta_cubic = zeta L(rho)), and
saturate the conjugate-unit lattice by q-th root extraction.  Roots are found
numerically (phase search over the embeddings) and then verified exactly in
the field, so the saturation proof does not rest on floating point."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

from .field import FieldError, NumberField
from .galois import GaloisGroup


def _log_vectors(k: NumberField, units, dps):
    embs = k.embeddings(dps)
    places = [r for r in embs if r.imag > mpmath.mpf(10) ** (-dps // 2)]
    assert len(places) == 3, "expected a totally imaginary sextic"
    return [[2 * mpmath.log(abs(k.eval_at(u, r))) for r in places] for u in units]


def _pair_regulator(k: NumberField, units, dps):
    rows = _log_vectors(k, units, dps)
    return abs(mpmath.det(mpmath.matrix([row[:2] for row in rows])))


def _power_basis_index(k: NumberField) -> int:
    disc_poly = int(k.poly.discriminant())
    ratio = disc_poly // k.disc
    assert disc_poly % k.disc == 0 and ratio > 0
    ind = isqrt(ratio)
    assert ind * ind == ratio
    return ind


def qth_root(k: NumberField, gamma, q: int, dps: int = 80):
    """A q-th root of gamma in K, or None.

    Candidate roots are assembled per conjugate place from the q phase
    choices, reconstructed as rational coordinates with denominator dividing
    the power-basis index, and confirmed with exact arithmetic."""
    ind = _power_basis_index(k)
    with mpmath.workdps(dps):
        embs = k.embeddings(dps)
        eps = mpmath.mpf(10) ** (-dps // 2)
        reps = []  # (embedding index, conjugate index or None)
        used = set()
        for i, r in enumerate(embs):
            if i in used:
                continue
            if abs(r.imag) < eps:
                reps.append((i, None))
                used.add(i)
            else:
                j = next(
                    jj for jj, s in enumerate(embs)
                    if jj not in used and jj != i and abs(s - mpmath.conj(r)) < eps
                )
                reps.append((i, j))
                used.update((i, j))
        vander = mpmath.matrix([[embs[s] ** t for t in range(k.n)] for s in range(k.n)])
        vinv = vander ** -1
        choice_lists = []
        for i, _j in reps:
            gval = k.eval_at(gamma, embs[i])
            base = gval ** (mpmath.mpf(1) / q)
            choices = [base * mpmath.exp(2j * mpmath.pi * t / q) for t in range(q)]
            if _j is None:
                choices = [c for c in choices if abs(c.imag) < eps]
            choice_lists.append(choices)

        def assemble(pick):
            vals = [None] * k.n
            for (i, j), c in zip(reps, pick):
                vals[i] = c
                if j is not None:
                    vals[j] = mpmath.conj(c)
            return mpmath.matrix(vals)

        from itertools import product as iproduct

        for pick in iproduct(*choice_lists):
            coords = vinv * assemble(pick)
            exact = []
            ok = True
            for c in coords:
                scaled = c.real * ind
                nearest = int(mpmath.nint(scaled))
                if abs(scaled - nearest) > mpmath.mpf("1e-20") or abs(c.imag) > mpmath.mpf("1e-20"):
                    ok = False
                    break
                exact.append(Fraction(nearest, ind))
            if not ok:
                continue
            cand = tuple(exact)
            if k.power(cand, q) == tuple(gamma):
                return cand
    return None


def s3_sextic_units(
    k: NumberField,
    gal: GaloisGroup,
    cubic_unit_in_k,
    h6: int,
    w6: int,
    zeta_gen,
    cubic: dict,
    quad: dict,
    dps: int = 60,
):
    """Fundamental system {v1, v2} of the sextic plus its regulator (mpf).

    cubic: {"h", "R" (mpf), "w", "disc"}; quad: {"h", "w", "disc"}."""
    with mpmath.workdps(dps):
        sigma = next(a for a in range(gal.order) if _order(gal, a) == 3)
        u1 = cubic_unit_in_k
        u2 = gal.apply(sigma, u1)
        analytic = (
            4 * cubic["h"] ** 2 * quad["h"] * (cubic["R"] ** 2) * w6 * mpmath.sqrt(abs(k.disc))
        ) / (quad["w"] * cubic["w"] ** 2 * mpmath.sqrt(abs(quad["disc"])) * abs(cubic["disc"]))
        r6 = analytic / h6
        units = [u1, u2]
        reg = _pair_regulator(k, units, dps)
        index = reg / r6
        k_idx = int(mpmath.nint(index))
        assert abs(index - k_idx) < mpmath.mpf("1e-20"), f"unit index not integral: {index}"
        assert k_idx >= 1
        while k_idx > 1:
            q = _smallest_prime_factor(k_idx)
            root = _find_root_in_cosets(k, units, q, w6, zeta_gen)
            if root is None:
                raise FieldError(
                    f"saturation failed: index {k_idx} but no {q}-th root found"
                )
            units = _replace_basis(k, units, root, q, dps)
            reg = _pair_regulator(k, units, dps)
            index = reg / r6
            k_idx = int(mpmath.nint(index))
            assert abs(index - k_idx) < mpmath.mpf("1e-20")
        assert abs(reg - r6) < r6 * mpmath.mpf("1e-25"), "regulator mismatch after saturation"
        return units, mpmath.mpf(reg)


def _order(gal: GaloisGroup, a: int) -> int:
    x, n = a, 1
    while x != 0:
        x = gal.table[x][a]
        n += 1
    return n


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _find_root_in_cosets(k, units, q, w6, zeta_gen):
    u1, u2 = units
    cosets = [(1, q - 1), (1, 0), (0, 1), (1, 1)]
    if q > 2:
        cosets += [(1, j) for j in range(2, q - 1)]
    for a, b in cosets:
        gamma0 = k.mul(k.power(u1, a), k.power(u2, b))
        gamma = gamma0
        for j in range(w6):
            if j:
                gamma = k.mul(gamma, zeta_gen)
            root = qth_root(k, gamma, q)
            if root is not None and abs(k.norm(root)) == 1:
                return root
    return None


def _replace_basis(k, units, root, q, dps):
    u1, u2 = units
    target = _pair_regulator(k, units, dps) / q
    best = None
    for cand in ([root, u2], [u1, root], [root, u1], [u2, root]):
        r = _pair_regulator(k, cand, dps)
        if abs(r - target) < target * mpmath.mpf("1e-20"):
            best = cand
            break
    assert best is not None, "no replacement basis attains the reduced regulator"
    return best
