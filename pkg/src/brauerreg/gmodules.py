"""Finitely presented Z[G]-modules with explicit integer action matrices.

A module is Z^gens / column-span(rels) with one action matrix per group
element; well-definedness and multiplicativity are verified eagerly at
construction.  Rank-0 modules and empty relation matrices are first-class.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .exactlinalg import (
    IntMatrix,
    LatticeSolver,
    cokernel_invariants,
    smith,
    unimodular_inverse,
)
from .fpabelian import FpGroup, FpMap, express_in_lattice, preimage_lattice
from .groups import FiniteGroup, GroupHom, Subgroup, preset, subgroup_lattice


class GModule:
    """Z[G]-module presented as Z^gens / im(rels) with action matrices."""

    __slots__ = ("group", "gens", "rels", "action", "_rel_solver", "_cache")

    def __init__(
        self,
        group: FiniteGroup,
        gens: int,
        rels: IntMatrix,
        action: tuple[IntMatrix, ...] | list[IntMatrix],
        check: bool = True,
    ):
        self.group = group
        self.gens = int(gens)
        self.rels = rels
        self.action = tuple(action)
        self._cache = {}
        if rels.rows != self.gens:
            raise ValueError("relation matrix needs one row per generator")
        if len(self.action) != group.order:
            raise ValueError("need one action matrix per group element")
        for a in self.action:
            if a.rows != self.gens or a.cols != self.gens:
                raise ValueError("action matrices must be gens x gens")
        self._rel_solver = LatticeSolver(rels)
        if check:
            self._check_action()

    def _check_action(self) -> None:
        solver = self._rel_solver
        ident = IntMatrix.identity(self.gens)
        if not self._congruent(self.action[0], ident):
            raise ValueError("identity must act trivially")
        for g in self.group.elements():
            if self.rels.cols and not solver.contains(self.action[g] * self.rels):
                raise ValueError("action does not preserve the relation lattice")
        for g in self.group.elements():
            rho_g = self.action[g]
            for h in self.group.elements():
                gh = self.group.mul(g, h)
                if not self._congruent(rho_g * self.action[h], self.action[gh]):
                    raise ValueError("action is not multiplicative modulo relations")

    def _congruent(self, a: IntMatrix, b: IntMatrix) -> bool:
        diff = a - b
        if diff.is_zero():
            return True
        if not self.rels.cols:
            return False
        return self._rel_solver.contains(diff)

    # -- abelian-group level -------------------------------------------------

    def fp(self) -> FpGroup:
        return FpGroup(self.gens, self.rels)

    def invariants(self) -> tuple[int, ...]:
        return cokernel_invariants(self.rels)

    def free_rank(self) -> int:
        return sum(1 for d in self.invariants() if d == 0)

    def torsion_order(self) -> int:
        return prod(d for d in self.invariants() if d != 0)

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        return None if self.free_rank() else self.torsion_order()

    def is_torsion_free(self) -> bool:
        return self.torsion_order() == 1

    def apply(self, g: int, vec: IntMatrix) -> IntMatrix:
        return self.action[g] * vec

    def __repr__(self) -> str:
        return (
            f"<GModule over {self.group.name or 'G'}: {self.gens} gens, "
            f"invariants {self.invariants()}>"
        )


class GMap:
    """G-equivariant map of presented modules, given on generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: GModule, target: GModule, matrix: IntMatrix, check: bool = True):
        if source.group is not target.group:
            raise ValueError("source and target must share the group")
        if matrix.rows != target.gens or matrix.cols != source.gens:
            raise ValueError("matrix shape must be target.gens x source.gens")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            solver = target._rel_solver
            if source.rels.cols and not solver.contains(matrix * source.rels):
                raise ValueError("map does not respect source relations")
            for g in source.group.elements():
                diff = matrix * source.action[g] - target.action[g] * matrix
                if not diff.is_zero() and not (target.rels.cols and solver.contains(diff)):
                    raise ValueError("map is not G-equivariant modulo target relations")

    def as_fp_map(self) -> FpMap:
        return FpMap(self.source.fp(), self.target.fp(), self.matrix)

    def compose(self, other: "GMap") -> "GMap":
        if other.target is not self.source:
            raise ValueError("cannot compose")
        return GMap(other.source, self.target, self.matrix * other.matrix, check=False)

    def __repr__(self) -> str:
        return f"<GMap {self.source.gens} -> {self.target.gens} gens>"


_TRIVIAL_GROUP_NAME = "C1"


def trivial_group() -> FiniteGroup:
    return preset(_TRIVIAL_GROUP_NAME)


def abelian(m: GModule) -> GModule:
    """The underlying abelian group of m, as a module over the trivial group."""
    return GModule(trivial_group(), m.gens, m.rels, (IntMatrix.identity(m.gens),), check=False)


def zero_module(group: FiniteGroup) -> GModule:
    return GModule(group, 0, IntMatrix.zeros(0, 0), tuple(IntMatrix.zeros(0, 0) for _ in group.elements()), check=False)


def trivial_module(group: FiniteGroup, order: int = 0) -> GModule:
    """Z with trivial action, or Z/order for order > 0."""
    rels = IntMatrix.zeros(1, 0) if order == 0 else IntMatrix(1, 1, [[order]])
    ident = IntMatrix.identity(1)
    return GModule(group, 1, rels, tuple(ident for _ in group.elements()), check=False)


def permutation_module(group: FiniteGroup, h: Subgroup) -> GModule:
    """Z[G/H]: free on the left cosets of H with the permutation action."""
    if h.parent is not group:
        raise ValueError("subgroup of a different group")
    key = ("perm_module", h.elements)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    coset_of: dict[int, int] = {}
    cosets: list[int] = []
    for x in group.elements():
        if x in coset_of:
            continue
        members = sorted(group.mul(x, a) for a in h.elements)
        idx = len(cosets)
        cosets.append(members[0])
        for mmb in members:
            coset_of[mmb] = idx
    k = len(cosets)
    mats = []
    for g in group.elements():
        mat = [[0] * k for _ in range(k)]
        for c, rep in enumerate(cosets):
            mat[coset_of[group.mul(g, rep)]][c] = 1
        mats.append(IntMatrix(k, k, mat))
    mod = GModule(group, k, IntMatrix.zeros(k, 0), tuple(mats), check=False)
    mod._cache["cosets"] = tuple(cosets)
    mod._cache["coset_of"] = tuple(coset_of[x] for x in group.elements())
    group._cache[key] = mod
    return mod


def regular_module(group: FiniteGroup) -> GModule:
    return permutation_module(group, Subgroup(group, (0,)))


def permutation_module_by_class(group: FiniteGroup, class_index: int) -> GModule:
    lat = subgroup_lattice(group)
    return permutation_module(group, lat.reps[class_index])


def augmentation_ideal(group: FiniteGroup) -> tuple[GModule, GMap]:
    """Kernel of the augmentation Z[G] -> Z, with basis {g - e}, plus its
    inclusion into the regular module."""
    n = group.order
    reg = regular_module(group)
    k = n - 1
    mats = []
    for g in group.elements():
        mat = [[0] * k for _ in range(k)]
        for j in range(1, n):
            # g*(g_j - e) = (g g_j - e) - (g - e)
            t = group.mul(g, j)
            if t != 0:
                mat[t - 1][j - 1] += 1
            if g != 0:
                mat[g - 1][j - 1] -= 1
        mats.append(IntMatrix(k, k, mat))
    mod = GModule(group, k, IntMatrix.zeros(k, 0), tuple(mats), check=False)
    incl_entries = [[0] * k for _ in range(n)]
    for j in range(1, n):
        incl_entries[j][j - 1] = 1
        incl_entries[0][j - 1] = -1
    incl = GMap(mod, reg, IntMatrix(n, k, incl_entries))
    return mod, incl


def augmentation_map(group: FiniteGroup) -> GMap:
    """The augmentation Z[G] -> Z itself."""
    reg = regular_module(group)
    triv = trivial_module(group)
    return GMap(reg, triv, IntMatrix(1, group.order, [[1] * group.order]))


def direct_sum(*mods: GModule) -> GModule:
    if not mods:
        raise ValueError("need at least one summand")
    group = mods[0].group
    if any(m.group is not group for m in mods):
        raise ValueError("summands over different groups")
    gens = sum(m.gens for m in mods)
    rels_cols = sum(m.rels.cols for m in mods)
    rels = [[0] * rels_cols for _ in range(gens)]
    ro, co = 0, 0
    for m in mods:
        for i in range(m.gens):
            for j in range(m.rels.cols):
                rels[ro + i][co + j] = m.rels.entries[i][j]
        ro += m.gens
        co += m.rels.cols
    mats = []
    for g in group.elements():
        mat = [[0] * gens for _ in range(gens)]
        off = 0
        for m in mods:
            a = m.action[g]
            for i in range(m.gens):
                for j in range(m.gens):
                    mat[off + i][off + j] = a.entries[i][j]
            off += m.gens
        mats.append(IntMatrix(gens, gens, mat))
    return GModule(group, gens, IntMatrix(gens, rels_cols, rels), tuple(mats), check=False)


def _block_diag_rels(rels: IntMatrix, copies: int) -> IntMatrix:
    n, m = rels.rows, rels.cols
    out = [[0] * (m * copies) for _ in range(n * copies)]
    for c in range(copies):
        for i in range(n):
            for j in range(m):
                out[c * n + i][c * m + j] = rels.entries[i][j]
    return IntMatrix(n * copies, m * copies, out)


def fixed_submodule(m: GModule, h: Subgroup) -> tuple[GModule, GMap]:
    """Presentation of M^H = {x : (rho(a) - 1)x in im rels for all a in H}.

    Returns the fixed submodule as a module over the trivial group (M^H is not
    G-stable in general) together with the inclusion into abelian(m).  The
    chosen generator basis is the column HNF basis of the preimage lattice, so
    downstream determinants are deterministic."""
    if h.parent is not m.group:
        raise ValueError("subgroup of a different group")
    key = ("fixed", h.elements)
    cached = m._cache.get(key)
    if cached is not None:
        return cached
    n = m.gens
    nontrivial = [a for a in h.elements if a != 0]
    if not nontrivial:
        basis = IntMatrix.identity(n)
    else:
        ident = IntMatrix.identity(n)
        stacked = None
        for a in nontrivial:
            block = m.action[a] - ident
            stacked = block if stacked is None else stacked.vstack(block)
        target_rels = _block_diag_rels(m.rels, len(nontrivial))
        basis = preimage_lattice(stacked, target_rels)
    rels = express_in_lattice(basis, m.rels)
    sub = GModule(trivial_group(), basis.cols, rels, (IntMatrix.identity(basis.cols),), check=False)
    incl = GMap(sub, abelian(m), basis, check=False)
    result = (sub, incl)
    m._cache[key] = result
    return result


def hom_fixed(h: Subgroup, m: GModule) -> tuple[GModule, GMap]:
    """Hom_G(Z[G/H], M) realized as M^H via evaluation at the coset H.

    A G-hom out of Z[G/H] is determined by the image of the coset H, which may
    be any H-fixed vector; this returns exactly fixed_submodule(m, h)."""
    return fixed_submodule(m, h)


@dataclass(frozen=True)
class TorsionFreeSplit:
    torsion: GModule
    free: GModule
    projection: GMap
    torsion_lift: IntMatrix  # generators of tors(M) inside Z^gens


def torsion_and_free(m: GModule) -> TorsionFreeSplit:
    """Split M into its torsion submodule and torsion-free quotient.

    The free part carries the induced action and the projection is exact on
    the chosen bases (not just up to isomorphism)."""
    cached = m._cache.get("torsion_free")
    if cached is not None:
        return cached
    dec = smith(m.rels)
    n = m.gens
    diag = dec.diagonal()
    r = dec.rank
    u_inv = unimodular_inverse(dec.u)
    tors_idx = [i for i in range(r) if diag[i] != 1]
    free_idx = list(range(r, n))

    def conjugated(g: int) -> IntMatrix:
        return dec.u * m.action[g] * u_inv

    tors_rels = IntMatrix(
        len(tors_idx), len(tors_idx),
        [[diag[ti] if a == b else 0 for b in range(len(tors_idx))] for a, ti in enumerate(tors_idx)],
    )
    tors_mats = []
    free_mats = []
    for g in m.group.elements():
        cg = conjugated(g)
        for j in tors_idx:
            for fi in free_idx:
                assert cg.entries[fi][j] == 0, "torsion must map to torsion"
        tors_mats.append(IntMatrix(
            len(tors_idx), len(tors_idx),
            [[cg.entries[i][j] for j in tors_idx] for i in tors_idx],
        ))
        free_mats.append(IntMatrix(
            len(free_idx), len(free_idx),
            [[cg.entries[i][j] for j in free_idx] for i in free_idx],
        ))
    tors = GModule(m.group, len(tors_idx), tors_rels, tuple(tors_mats), check=False)
    free = GModule(m.group, len(free_idx), IntMatrix.zeros(len(free_idx), 0), tuple(free_mats), check=False)
    proj_matrix = IntMatrix(
        len(free_idx), n,
        [[dec.u.entries[i][j] for j in range(n)] for i in free_idx],
    )
    proj = GMap(m, free, proj_matrix, check=False)
    tors_lift = IntMatrix(
        n, len(tors_idx),
        [[u_inv.entries[i][j] for j in tors_idx] for i in range(n)],
    )
    split = TorsionFreeSplit(tors, free, proj, tors_lift)
    m._cache["torsion_free"] = split
    return split


def dual_lattice(m: GModule) -> GModule:
    """Z-dual with the contragredient action; requires m torsion-free."""
    if not m.is_torsion_free():
        raise ValueError("dual_lattice requires a torsion-free module")
    if m.rels.cols:
        m = torsion_and_free(m).free
    mats = tuple(m.action[m.group.inv(g)].transpose() for g in m.group.elements())
    return GModule(m.group, m.gens, IntMatrix.zeros(m.gens, 0), mats, check=False)


def restricted_module(m: GModule, y: Subgroup) -> GModule:
    """Res_Y M as a module over the abstract copy of Y."""
    y_abs, incl = y.as_group()
    mats = tuple(m.action[incl(a)] for a in y_abs.elements())
    return GModule(y_abs, m.gens, m.rels, mats, check=False)


def restricted_module_along(m: GModule, hom: GroupHom) -> GModule:
    """Pull the action back along an injective homomorphism G -> X, giving a
    module over G itself (not over an abstract copy of the image)."""
    if hom.target is not m.group:
        raise ValueError("homomorphism target must be the module's group")
    if not hom.is_injective():
        raise ValueError("homomorphism must be injective")
    mats = tuple(m.action[hom(a)] for a in hom.source.elements())
    return GModule(hom.source, m.gens, m.rels, mats, check=False)


def inflated_module(m: GModule, projection: GroupHom) -> GModule:
    """Inf M along a surjection Z ->> G: z acts as its image does."""
    if projection.target is not m.group:
        raise ValueError("projection target must be the module's group")
    if not projection.is_surjective():
        raise ValueError("projection must be surjective")
    mats = tuple(m.action[projection(z)] for z in projection.source.elements())
    return GModule(projection.source, m.gens, m.rels, mats, check=False)


def induced_module(n_mod: GModule, y: Subgroup) -> GModule:
    """Ind_Y^G N: coset-indexed copies of N with the twisted permutation action.

    n_mod must live over y.as_group()'s abstract group."""
    group = y.parent
    y_abs, incl = y.as_group()
    if n_mod.group is not y_abs:
        raise ValueError("module is not over the abstract copy of the subgroup")
    to_abs = {incl(a): a for a in y_abs.elements()}
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for x in group.elements():
        if x in coset_of:
            continue
        members = sorted(group.mul(x, a) for a in y.elements)
        idx = len(reps)
        reps.append(members[0])
        for mmb in members:
            coset_of[mmb] = idx
    k = len(reps)
    r = n_mod.gens
    gens = k * r
    mats = []
    for g in group.elements():
        mat = [[0] * gens for _ in range(gens)]
        for c, rep in enumerate(reps):
            t = group.mul(g, rep)
            c2 = coset_of[t]
            h = group.mul(group.inv(reps[c2]), t)
            block = n_mod.action[to_abs[h]]
            for i in range(r):
                for j in range(r):
                    mat[c2 * r + i][c * r + j] = block.entries[i][j]
        mats.append(IntMatrix(gens, gens, mat))
    rels = _block_diag_rels(n_mod.rels, k)
    return GModule(group, gens, rels, tuple(mats), check=False)


def kernel_and_cokernel(f: GMap) -> tuple[GModule, GModule]:
    """Kernel and cokernel of a G-map, presented as G-modules."""
    group = f.source.group
    coker = GModule(
        group,
        f.target.gens,
        f.matrix.hstack(f.target.rels),
        f.target.action,
        check=False,
    )
    basis = preimage_lattice(f.matrix, f.target.rels)
    rels = express_in_lattice(basis, f.source.rels)
    mats = tuple(
        express_in_lattice(basis, f.source.action[g] * basis) for g in group.elements()
    )
    kernel = GModule(group, basis.cols, rels, mats, check=False)
    kernel._cache["ambient_lift"] = basis
    return kernel, coker


def module_to_json(m: GModule) -> dict:
    from .groups import group_to_json

    return {
        "group": group_to_json(m.group),
        "rank": m.gens,
        "rels": m.rels.to_json(),
        "action": {str(g): m.action[g].to_json() for g in m.group.elements()},
    }


def module_from_json(obj: dict, group: FiniteGroup | None = None) -> GModule:
    """Parse the module schema; actions omitted from the JSON are derived from
    the given ones via the Cayley table (the given set must generate)."""
    from .groups import group_from_json

    if group is None:
        group = group_from_json(obj["group"])
    gens = int(obj["rank"])
    rels = IntMatrix.from_json(obj["rels"]) if obj.get("rels") else IntMatrix.zeros(gens, 0)
    known: dict[int, IntMatrix] = {0: IntMatrix.identity(gens)}
    for key, mat in obj["action"].items():
        known[int(key)] = IntMatrix.from_json(mat)
    given = list(known)
    changed = True
    while changed and len(known) < group.order:
        changed = False
        for a in list(known):
            for s in given:
                t = group.mul(a, s)
                if t not in known:
                    known[t] = known[a] * known[s]
                    changed = True
    if len(known) != group.order:
        raise ValueError("given action elements do not generate the group")
    return GModule(group, gens, rels, tuple(known[g] for g in group.elements()))
