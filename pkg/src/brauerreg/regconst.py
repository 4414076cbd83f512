"""Regulator constants of Z[G]-modules along Brauer relations, by two
independent routes:

* the defining formula, prod_H (|tors(M^H)|^-2 det((1/|H|) <.,.> on (M^H)~))^{n_H}
  evaluated with an explicit G-invariant positive-definite pairing, and
* the homological characterization via an injective map phi between the
  permutation modules attached to the positive and negative parts of the
  relation, combining the four kernel/cokernel orders of Hom_G(phi, M) and
  Hom_G(phi^Tr, M).

Both routes are exact rationals end to end.  The module also verifies the
multiplicativity law with its Kani-defect correction, triviality on
cohomologically trivial modules, and the Ind/Res/Inf functoriality identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import h_order, kani_defect
from .exactlinalg import (
    IntMatrix,
    LatticeSolver,
    RationalMatrix,
    column_hnf,
    rational_det,
)
from .fpabelian import FpGroup, FpMap, express_in_lattice, preimage_lattice
from .gmodules import (
    GMap,
    GModule,
    _block_diag_rels,
    direct_sum,
    fixed_submodule,
    induced_module,
    inflated_module,
    permutation_module,
    restricted_module_along,
    torsion_and_free,
)
from .groups import GroupHom, Subgroup, subgroup_lattice
from .relations import BrauerRelation, induce, inflate, restrict


class FinitenessError(RuntimeError):
    """A kernel or cokernel that the homological formula needs turned out
    infinite; surfaced instead of being interpreted."""


@dataclass(frozen=True)
class PairingGram:
    """G-invariant symmetric pairing on the torsion-free quotient M~, as a Gram
    matrix on the module's chosen free basis."""

    module: GModule
    gram: RationalMatrix

    def __post_init__(self):
        free = torsion_and_free(self.module).free
        if self.gram.rows != free.gens or self.gram.cols != free.gens:
            raise ValueError("gram must be square of size the free rank")
        if not self.gram.is_symmetric():
            raise ValueError("pairing must be symmetric")
        if free.gens and rational_det(self.gram) == 0:
            raise ValueError("pairing is degenerate on the free quotient")
        for g in self.module.group.elements():
            rho = RationalMatrix.from_int_matrix(free.action[g])
            if rho.transpose() * self.gram * rho != self.gram:
                raise ValueError("pairing is not G-invariant")


def invariant_pairing(m: GModule) -> PairingGram:
    """Average of the standard dot product over the G-orbit: gram =
    sum_g rho~(g)^T rho~(g).  Positive definite, hence nondegenerate."""
    free = torsion_and_free(m).free
    k = free.gens
    total = RationalMatrix(k, k, [[0] * k for _ in range(k)])
    for g in m.group.elements():
        rho = RationalMatrix.from_int_matrix(free.action[g])
        total = total + rho.transpose() * rho
    return PairingGram(m, total)


def random_invariant_pairing(m: GModule, seed: int) -> PairingGram:
    """Average of U^T U over the orbit for a seeded random unimodular U; used
    to exercise pairing-independence of the regulator constant."""
    free = torsion_and_free(m).free
    k = free.gens
    rng = random.Random(seed)
    u = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for _ in range(3 * k):
        i = rng.randrange(k) if k else 0
        j = rng.randrange(k) if k else 0
        if k < 2 or i == j:
            continue
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        for col in range(k):
            u[i][col] += c * u[j][col]
    u_rat = RationalMatrix(k, k, u)
    seed_gram = u_rat.transpose() * u_rat
    total = RationalMatrix(k, k, [[0] * k for _ in range(k)])
    for g in m.group.elements():
        rho = RationalMatrix.from_int_matrix(free.action[g])
        total = total + rho.transpose() * seed_gram * rho
    return PairingGram(m, total)


def _class_factor(m: GModule, h: Subgroup, gram: RationalMatrix) -> Fraction:
    """(1/|tors(M^H)|^2) * det((1/|H|) <.,.> restricted to (M^H)~)."""
    sub, incl = fixed_submodule(m, h)
    tors = sub.torsion_order()
    proj = torsion_and_free(m).projection.matrix
    image = column_hnf(proj * incl.matrix)
    basis = RationalMatrix.from_int_matrix(image)
    restricted = (basis.transpose() * gram * basis).scale(Fraction(1, h.order))
    return rational_det(restricted) / tors ** 2


def regulator_constant(
    theta: BrauerRelation,
    m: GModule,
    pairing: PairingGram | None = None,
) -> Fraction:
    """C_Theta(M) by the defining pairing formula; exact and positive."""
    return _regulator_constant_impl(theta, m, pairing)[0]


def regulator_constant_factors(
    theta: BrauerRelation,
    m: GModule,
    pairing: PairingGram | None = None,
) -> dict[int, Fraction]:
    """Per-subgroup-class factors (before raising to n_H)."""
    return _regulator_constant_impl(theta, m, pairing)[1]


def _regulator_constant_impl(theta, m, pairing):
    if theta.group is not m.group:
        raise ValueError("relation and module live over different groups")
    if pairing is None:
        pairing = invariant_pairing(m)
    elif pairing.module is not m:
        raise ValueError("pairing was built for a different module")
    lat = theta.lattice
    value = Fraction(1)
    factors: dict[int, Fraction] = {}
    for cls_idx, rep, n in theta.support():
        factor = _class_factor(m, rep, pairing.gram)
        members = lat.classes[cls_idx]
        if len(members) > 1:
            other = lat.subgroups[members[1]]
            assert _class_factor(m, other, pairing.gram) == factor, (
                "conjugate subgroups must contribute equal factors"
            )
        factors[cls_idx] = factor
        value *= factor ** n
    return value, factors


# -- homological route (Bartel--de Smit characterization) --------------------


@dataclass(frozen=True)
class _PermBlock:
    subgroup: Subgroup
    offset: int           # first coset index of this block inside the sum
    cosets: tuple[int, ...]


@dataclass(frozen=True)
class PhiDatum:
    """Injective phi: P1 -> P2 with finite cokernel between the permutation
    modules of the positive and negative relation parts, plus its transpose
    (under the self-duality of permutation bases)."""

    p1: GModule
    p2: GModule
    phi: GMap
    phi_tr: GMap
    blocks1: tuple[_PermBlock, ...]
    blocks2: tuple[_PermBlock, ...]
    seed: int
    attempts: int


def _perm_sum(group, parts: list[Subgroup]) -> tuple[GModule, tuple[_PermBlock, ...]]:
    mods = [permutation_module(group, h) for h in parts]
    blocks = []
    offset = 0
    for h, mod in zip(parts, mods):
        blocks.append(_PermBlock(h, offset, mod._cache["cosets"]))
        offset += mod.gens
    return direct_sum(*mods), tuple(blocks)


def _hom_basis_maps(group, blocks1, blocks2) -> list[IntMatrix]:
    """Z-basis of Hom_G(P1, P2): one map per (block1, block2, double coset),
    sending the identity coset of block1 to the H-orbit sum of the double
    coset inside block2."""
    from .groups import double_cosets

    rows = blocks2[-1].offset + len(blocks2[-1].cosets) if blocks2 else 0
    cols = blocks1[-1].offset + len(blocks1[-1].cosets) if blocks1 else 0
    out = []
    for b1 in blocks1:
        h = b1.subgroup
        p1 = permutation_module(group, h)
        for b2 in blocks2:
            k = b2.subgroup
            p2 = permutation_module(group, k)
            coset_of2 = p2._cache["coset_of"]
            for g in double_cosets(h, k):
                # the H-orbit of the coset gK
                orbit = sorted({coset_of2[group.mul(a, g)] for a in h.elements})
                entries = [[0] * cols for _ in range(rows)]
                for c, rep in enumerate(b1.cosets):
                    for o in orbit:
                        x = group.mul(rep, p2._cache["cosets"][o])
                        entries[b2.offset + coset_of2[x]][b1.offset + c] += 1
                out.append(IntMatrix(rows, cols, entries))
    return out


def build_phi(theta: BrauerRelation, seed: int = 0, max_attempts: int = 200) -> PhiDatum:
    """Search for phi as a seeded random integer combination (coefficients in
    [-2, 2]) of the double-coset basis of Hom_G(P1, P2) with nonzero
    determinant.  Deterministic given the seed; raises after max_attempts."""
    if theta.is_zero():
        raise ValueError("zero relation has no permutation parts to connect")
    group = theta.group
    parts1: list[Subgroup] = []
    parts2: list[Subgroup] = []
    for _, rep, n in theta.support():
        for _ in range(abs(n)):
            (parts1 if n > 0 else parts2).append(rep)
    p1, blocks1 = _perm_sum(group, parts1)
    p2, blocks2 = _perm_sum(group, parts2)
    if p1.gens != p2.gens:
        raise ValueError("relation degree sum is nonzero; not a Brauer relation")
    basis = _hom_basis_maps(group, blocks1, blocks2)
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        total = IntMatrix.zeros(p2.gens, p1.gens)
        for b in basis:
            c = rng.randint(-2, 2)
            if c:
                total = total + b.scale(c)
        if p1.gens and total.det() == 0:
            continue
        phi = GMap(p1, p2, total)
        phi_tr = GMap(p2, p1, total.transpose())
        return PhiDatum(p1, p2, phi, phi_tr, blocks1, blocks2, seed, attempt)
    raise RuntimeError(
        f"no injective phi found after {max_attempts} attempts (seed {seed})"
    )


@dataclass(frozen=True)
class _HomSide:
    group: FpGroup
    bases: tuple[IntMatrix, ...]
    solvers: tuple[LatticeSolver, ...]


def _hom_side(m: GModule, blocks: tuple[_PermBlock, ...]) -> _HomSide:
    """Hom_G(P, M) = direct sum of M^{H_b}, presented on fixed-lattice bases."""
    bases = []
    rels_blocks = []
    for b in blocks:
        sub, incl = fixed_submodule(m, b.subgroup)
        bases.append(incl.matrix)
        rels_blocks.append(sub.rels)
    gens = sum(b.cols for b in bases)
    rels_cols = sum(r.cols for r in rels_blocks)
    rels = [[0] * rels_cols for _ in range(gens)]
    ro = co = 0
    for base, rb in zip(bases, rels_blocks):
        for i in range(rb.rows):
            for j in range(rb.cols):
                rels[ro + i][co + j] = rb.entries[i][j]
        ro += rb.rows
        co += rb.cols
    return _HomSide(
        FpGroup(gens, IntMatrix(gens, rels_cols, rels)),
        tuple(bases),
        tuple(LatticeSolver(b) for b in bases),
    )


def _hom_functor_map(
    m: GModule,
    phi_matrix: IntMatrix,
    src_blocks: tuple[_PermBlock, ...],
    src_side: _HomSide,
    tgt_blocks: tuple[_PermBlock, ...],
    tgt_side: _HomSide,
) -> FpMap:
    """Hom_G(phi, M): Hom(P_src_of_phi_target,...) -- concretely, for
    phi: A -> B this is the map Hom(B, M) -> Hom(A, M), psi -> psi o phi.

    Here src_blocks/src_side describe Hom(B, M) and tgt_blocks/tgt_side
    describe Hom(A, M); phi_matrix is the matrix of phi: A -> B on coset bases.
    """
    group = m.group
    rows = sum(b.cols for b in tgt_side.bases)
    cols = sum(b.cols for b in src_side.bases)
    entries = [[0] * cols for _ in range(rows)]
    row_off = 0
    for ti, tb in enumerate(tgt_blocks):
        col_off = 0
        phi_col = tb.offset  # identity coset of block ti has local index 0
        for sj, sb in enumerate(src_blocks):
            base = src_side.bases[sj]
            if base.cols:
                acc = IntMatrix.zeros(m.gens, base.cols)
                for c, coset_rep in enumerate(sb.cosets):
                    a = phi_matrix.entries[sb.offset + c][phi_col]
                    if a:
                        acc = acc + (m.action[coset_rep] * base).scale(a)
                coords = tgt_side.solvers[ti].solve(acc)
                if coords is None:
                    raise ArithmeticError("hom image left the fixed lattice")
                for i in range(coords.rows):
                    for j in range(base.cols):
                        entries[row_off + i][col_off + j] = coords.entries[i][j]
            col_off += base.cols
        row_off += tgt_side.bases[ti].cols
    return FpMap(src_side.group, tgt_side.group, IntMatrix(rows, cols, entries))


def regulator_constant_homological(
    theta: BrauerRelation,
    m: GModule,
    phi: PhiDatum | None = None,
    seed: int = 0,
) -> Fraction:
    """C_Theta(M) as (|Coker(phi^Tr,M)|/|Ker(phi^Tr,M)|) /
    (|Coker(phi,M)|/|Ker(phi,M)|), with all four orders asserted finite."""
    if theta.group is not m.group:
        raise ValueError("relation and module live over different groups")
    if theta.is_zero():
        return Fraction(1)
    if phi is None:
        phi = build_phi(theta, seed=seed)
    side1 = _hom_side(m, phi.blocks1)  # Hom(P1, M)
    side2 = _hom_side(m, phi.blocks2)  # Hom(P2, M)
    # (phi, M): Hom(P2, M) -> Hom(P1, M); (phi^Tr, M): Hom(P1, M) -> Hom(P2, M)
    map_phi = _hom_functor_map(m, phi.phi.matrix, phi.blocks2, side2, phi.blocks1, side1)
    map_tr = _hom_functor_map(m, phi.phi_tr.matrix, phi.blocks1, side1, phi.blocks2, side2)
    orders = {}
    for name, fp_map in (("phi", map_phi), ("phi_tr", map_tr)):
        ker = fp_map.kernel_order()
        cok = fp_map.cokernel_order()
        if ker is None or cok is None:
            raise FinitenessError(f"infinite kernel/cokernel for ({name}, M)")
        orders[name] = (ker, cok)
    k1, c1 = orders["phi"]
    k2, c2 = orders["phi_tr"]
    return Fraction(c2, k2) / Fraction(c1, k1)


# -- verification operations --------------------------------------------------


@dataclass(frozen=True)
class MultiplicativityReport:
    c_total: Fraction
    c_sub: Fraction
    c_quot: Fraction
    defect: Fraction
    product: Fraction
    holds: bool


def check_multiplicativity(theta: BrauerRelation, f: GMap, g: GMap) -> MultiplicativityReport:
    """For an exact sequence 0 -> M' -f-> M -g-> M'' -> 0 verify
    C(M) = C(M') C(M'') psi(f)^2 exactly."""
    if f.target is not g.source:
        raise ValueError("maps are not composable as a two-step sequence")
    ker_f, _ = _kernel_data(f)
    if ker_f.order() != 1:
        raise ValueError("first map is not injective")
    coker_g = FpMap(g.source.fp(), g.target.fp(), g.matrix).cokernel()
    if not coker_g.is_trivial():
        raise ValueError("second map is not surjective")
    image = column_hnf(f.matrix.hstack(f.target.rels))
    kernel_g = column_hnf(
        preimage_lattice(g.matrix, g.target.rels).hstack(f.target.rels)
    )
    if image != kernel_g:
        raise ValueError("sequence is not exact in the middle")
    c_total = regulator_constant(theta, f.target)
    c_sub = regulator_constant(theta, f.source)
    c_quot = regulator_constant(theta, g.target)
    defect = kani_defect(theta, f)
    product = c_sub * c_quot * defect ** 2
    holds = c_total == product
    assert holds, (
        f"multiplicativity failed: C(M)={c_total} but C(M')C(M'')psi^2={product}"
    )
    return MultiplicativityReport(c_total, c_sub, c_quot, defect, product, holds)


def _kernel_data(f: GMap):
    return FpMap(f.source.fp(), f.target.fp(), f.matrix).kernel()


@dataclass(frozen=True)
class TrivialityReport:
    value_pairing: Fraction
    value_homological: Fraction
    holds: bool


def check_cohomologically_trivial(theta: BrauerRelation, m: GModule, seed: int = 0) -> TrivialityReport:
    """For a module with h^1(H, M) = h^2(H, M) = 1 for every subgroup class
    (the operational triviality proxy), assert C_Theta(M) = 1 exactly."""
    lat = subgroup_lattice(m.group)
    for rep in lat.reps:
        if h_order(rep, m, 1) != 1 or h_order(rep, m, 2) != 1:
            raise ValueError(
                f"module is not cohomologically trivial at subgroup {rep.elements}"
            )
    v1 = regulator_constant(theta, m)
    v2 = regulator_constant_homological(theta, m, seed=seed)
    holds = v1 == 1 and v2 == 1
    assert holds, f"regulator constant of a cohomologically trivial module: {v1}, {v2}"
    return TrivialityReport(v1, v2, holds)


@dataclass(frozen=True)
class FunctorialityReport:
    kind: str
    left: Fraction
    right: Fraction
    holds: bool


def check_functoriality_induced(
    theta: BrauerRelation, embedding: GroupHom, n: GModule
) -> FunctorialityReport:
    """(i): C_{Ind Theta}(N) = C_Theta(Res N) for G -> X and N an X-module."""
    if n.group is not embedding.target:
        raise ValueError("module must live over the embedding target")
    left = regulator_constant(induce(theta, embedding), n)
    right = regulator_constant(theta, restricted_module_along(n, embedding))
    holds = left == right
    assert holds, f"Ind/Res functoriality failed: {left} != {right}"
    return FunctorialityReport("ind", left, right, holds)


def check_functoriality_restricted(
    theta: BrauerRelation, y: Subgroup, n: GModule
) -> FunctorialityReport:
    """(ii): C_{Res_Y Theta}(N) = C_Theta(Ind_Y^G N) for Y <= G and N over Y."""
    y_abs, _ = y.as_group()
    if n.group is not y_abs:
        raise ValueError("module must live over the abstract copy of Y")
    left = regulator_constant(restrict(theta, y), n)
    right = regulator_constant(theta, induced_module(n, y))
    holds = left == right
    assert holds, f"Res/Ind functoriality failed: {left} != {right}"
    return FunctorialityReport("res", left, right, holds)


def check_functoriality_inflated(
    theta: BrauerRelation, projection: GroupHom, m: GModule
) -> FunctorialityReport:
    """(iii): C_{Inf Theta}(Inf M) = C_Theta(M) along Z ->> G."""
    if m.group is not projection.target:
        raise ValueError("module must live over the projection target")
    left = regulator_constant(inflate(theta, projection), inflated_module(m, projection))
    right = regulator_constant(theta, m)
    holds = left == right
    assert holds, f"Inf functoriality failed: {left} != {right}"
    return FunctorialityReport("inf", left, right, holds)


def check_functoriality(theta: BrauerRelation, kind: str, **datum) -> FunctorialityReport:
    """Dispatch to the Ind/Res/Inf functoriality check by kind."""
    if kind == "ind":
        return check_functoriality_induced(theta, datum["embedding"], datum["module"])
    if kind == "res":
        return check_functoriality_restricted(theta, datum["subgroup"], datum["module"])
    if kind == "inf":
        return check_functoriality_inflated(theta, datum["projection"], datum["module"])
    raise ValueError(f"unknown functoriality case {kind!r}")
