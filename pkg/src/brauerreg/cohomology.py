"""Group cohomology H^i(H, M) for presented modules, induced maps on H^1 and
the Kani defect of a module map across a Brauer relation.

H^i is computed as the cohomology of Hom_{Z[H]}(F_*, M) for a free resolution
F_* of Z over Z[H] built by iterated kernel lifting.  The resolution ranks
stay small (a handful per degree for |H| <= 8), so the cochain spaces are
M^{r_i} instead of the bar resolution's M^(|H|^i); the literal bar differential
is kept in the test suite as an independent oracle.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import IntMatrix, column_hnf, kernel_basis, LatticeSolver
from .fpabelian import FpGroup, express_in_lattice, homology_group, map_on_subquotients, preimage_lattice
from .gmodules import GMap, GModule, _block_diag_rels, restricted_module
from .groups import FiniteGroup, Subgroup
from .relations import BrauerRelation

DEFAULT_MAX_DEGREE = 3

_lock = threading.Lock()
_cache_enabled = True
_max_degree = DEFAULT_MAX_DEGREE


def configure(max_degree: int | None = None, cache: bool | None = None) -> None:
    """Adjust the degree cap and the complex memo table."""
    global _cache_enabled, _max_degree
    with _lock:
        if max_degree is not None:
            _max_degree = int(max_degree)
        if cache is not None:
            _cache_enabled = bool(cache)


def max_degree() -> int:
    return _max_degree


class FreeResolution:
    """Free Z[H]-resolution ... -> F_1 -> F_0 -> Z -> 0 with F_i = Z[H]^ranks[i].

    The Z-basis of F_i is indexed by (copy j, element h) -> j*|H| + h; the
    boundary d_i: F_i -> F_{i-1} is stored as a plain integer matrix in these
    coordinates.  Exactness holds by construction: the generators of F_{i+1}
    map onto module generators of ker(d_i).
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.ranks = [1]
        self.boundaries: list[IntMatrix] = []
        self._kernel_gens: list[IntMatrix] | None = None

    def _act(self, x: int, vec: tuple[int, ...], rank: int) -> tuple[int, ...]:
        o = self.group.order
        out = [0] * (rank * o)
        for j in range(rank):
            base = j * o
            for h in range(o):
                c = vec[base + h]
                if c:
                    out[base + self.group.mul(x, h)] += c
        return tuple(out)

    def _module_generators(self, lattice: IntMatrix, rank: int) -> list[tuple[int, ...]]:
        """Greedy Z[H]-module generators of the column lattice."""
        gens: list[tuple[int, ...]] = []
        span: IntMatrix | None = None
        solver: LatticeSolver | None = None
        for idx in range(lattice.cols):
            v = lattice.column_vec(idx)
            if solver is not None and solver.contains(IntMatrix.column(v)):
                continue
            gens.append(v)
            orbit = [self._act(x, v, rank) for x in self.group.elements()]
            orbit_mat = IntMatrix(len(v), len(orbit), [[col[i] for col in orbit] for i in range(len(v))])
            span = orbit_mat if span is None else span.hstack(orbit_mat)
            span = column_hnf(span)
            solver = LatticeSolver(span)
        return gens

    def extend(self, degree: int) -> None:
        """Ensure boundaries d_1..d_degree exist."""
        o = self.group.order
        while len(self.boundaries) < degree:
            i = len(self.boundaries)
            if i == 0:
                aug = IntMatrix(1, o, [[1] * o])
                ker = kernel_basis(aug)
            else:
                ker = kernel_basis(self.boundaries[i - 1])
            rank_prev = self.ranks[i]
            gens = self._module_generators(ker, rank_prev)
            rank_new = len(gens)
            entries = [[0] * (rank_new * o) for _ in range(rank_prev * o)]
            for j, v in enumerate(gens):
                for h in range(o):
                    col = self._act(h, v, rank_prev)
                    for row, c in enumerate(col):
                        entries[row][j * o + h] = c
            self.ranks.append(rank_new)
            self.boundaries.append(IntMatrix(rank_prev * o, rank_new * o, entries))


def resolution(group: FiniteGroup, degree: int) -> FreeResolution:
    with _lock:
        res = group._cache.get("resolution")
        if res is None or not _cache_enabled:
            res = FreeResolution(group)
            if _cache_enabled:
                group._cache["resolution"] = res
    res.extend(degree)
    return res


@dataclass
class CochainComplex:
    """Hom_{Z[H]}(F_*, M) up to max_degree: spaces C^i = M^{r_i} with block
    differentials; d(i+1) o d(i) = 0 modulo relations is checked."""

    subgroup: Subgroup
    module: GModule
    max_degree: int
    ranks: list[int]
    deltas: list[IntMatrix]      # deltas[i] : C^i -> C^{i+1}
    relations: list[IntMatrix]   # relations[i] presents C^i

    def space(self, i: int) -> FpGroup:
        return FpGroup(self.relations[i].rows, self.relations[i])

    def _verify(self) -> None:
        for i in range(len(self.deltas) - 1):
            comp = self.deltas[i + 1] * self.deltas[i]
            if comp.is_zero():
                continue
            rels = self.relations[i + 2]
            if not rels.cols or LatticeSolver(rels).solve(comp) is None:
                raise AssertionError("differential does not square to zero")


def _delta_matrix(res: FreeResolution, i: int, m: GModule) -> IntMatrix:
    """delta^i : M^{r_i} -> M^{r_{i+1}} induced by d_{i+1}."""
    o = res.group.order
    n = m.gens
    r_src = res.ranks[i]
    r_tgt = res.ranks[i + 1]
    d = res.boundaries[i]
    out = [[0] * (r_src * n) for _ in range(r_tgt * n)]
    for k in range(r_tgt):
        col = d.column_vec(k * o)  # image of generator b_k of F_{i+1}
        for j in range(r_src):
            block = None
            for h in range(o):
                c = col[j * o + h]
                if c:
                    term = m.action[h].scale(c)
                    block = term if block is None else block + term
            if block is not None:
                for a in range(n):
                    for b in range(n):
                        out[k * n + a][j * n + b] = block.entries[a][b]
    return IntMatrix(r_tgt * n, r_src * n, out)


def cochain_complex(h: Subgroup, m: GModule, degree: int | None = None) -> CochainComplex:
    """Build (and memoize) the Hom complex computing H^*(H, M)."""
    if h.parent is not m.group:
        raise ValueError("subgroup of a different group")
    if degree is None:
        degree = _max_degree
    key = ("cochain", h.elements, degree)
    with _lock:
        cached = m._cache.get(key) if _cache_enabled else None
    if cached is not None:
        return cached
    y_abs, _ = h.as_group()
    m_res = restricted_module(m, h)
    res = resolution(y_abs, degree + 1)
    deltas = [_delta_matrix(res, i, m_res) for i in range(degree + 1)]
    rels = [_block_diag_rels(m.rels, res.ranks[i]) for i in range(degree + 2)]
    cx = CochainComplex(h, m, degree, list(res.ranks[: degree + 2]), deltas, rels)
    cx._verify()
    with _lock:
        if _cache_enabled:
            m._cache[key] = cx
    return cx


def cohomology(h: Subgroup, m: GModule, i: int) -> tuple[int, ...]:
    """Invariant factors of H^i(H, M).

    Degree 0 reports the invariants of M^H; degrees >= 1 are finite groups
    annihilated by |H| (asserted)."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    if i > _max_degree:
        raise ValueError(f"degree {i} exceeds the configured maximum {_max_degree}")
    if i == 0:
        from .gmodules import fixed_submodule

        return fixed_submodule(m, h)[0].invariants()
    cx = cochain_complex(h, m, min(_max_degree, max(i, 1)))
    group = homology_group(cx.deltas[i - 1], cx.deltas[i], cx.relations[i], cx.relations[i + 1])
    inv = group.invariants()
    for d in inv:
        assert d != 0 and h.order % d == 0, f"H^{i} not annihilated by |H|: {inv}"
    return inv


def h_order(h: Subgroup, m: GModule, i: int) -> int:
    """h^i(H, M) = |H^i(H, M)| for i >= 1."""
    inv = cohomology(h, m, i)
    out = 1
    for d in inv:
        out *= d
    return out


def _h1_cycle_data(h: Subgroup, m: GModule) -> tuple[IntMatrix, FpGroup]:
    cx = cochain_complex(h, m, max(1, min(_max_degree, 1)))
    cycle = preimage_lattice(cx.deltas[1], cx.relations[2])
    boundary = cx.deltas[0].hstack(cx.relations[1])
    rels = express_in_lattice(cycle, boundary).hstack(kernel_basis(cycle))
    return cycle, FpGroup(cycle.cols, rels)


def h1_map(f: GMap, h: Subgroup):
    """Induced map H^1(H, source) -> H^1(H, target) as an FpMap on cocycle
    presentations."""
    if h.parent is not f.source.group:
        raise ValueError("subgroup of a different group")
    src_cycle, src_h1 = _h1_cycle_data(h, f.source)
    tgt_cycle, tgt_h1 = _h1_cycle_data(h, f.target)
    y_abs, _ = h.as_group()
    res = resolution(y_abs, 2)
    r1 = res.ranks[1]
    big = _block_diag_rels_matrix(f.matrix, r1)
    return map_on_subquotients(big, src_cycle, src_h1, tgt_cycle, tgt_h1)


def _block_diag_rels_matrix(mat: IntMatrix, copies: int) -> IntMatrix:
    rows, cols = mat.rows, mat.cols
    out = [[0] * (cols * copies) for _ in range(rows * copies)]
    for c in range(copies):
        for i in range(rows):
            for j in range(cols):
                out[c * rows + i][c * cols + j] = mat.entries[i][j]
    return IntMatrix(rows * copies, cols * copies, out)


def h1_kernel_order(f: GMap, h: Subgroup) -> int:
    """|Ker(H^1(H, f))|; always finite since H^1 of a finite group is."""
    order = h1_map(f, h).kernel_order()
    assert order is not None, "kernel of an induced H^1 map must be finite"
    return order


def kani_defect(theta: BrauerRelation, f: GMap) -> Fraction:
    """psi_Theta(f) = prod_H |Ker(H^1(H, f))|^{n_H}.

    Evaluated on class representatives; conjugate subgroups give equal factors,
    which is spot-checked on one non-representative member per class."""
    if theta.group is not f.source.group:
        raise ValueError("relation and map live over different groups")
    lat = theta.lattice
    out = Fraction(1)
    for cls_idx, rep, n in theta.support():
        order = h1_kernel_order(f, rep)
        members = lat.classes[cls_idx]
        if len(members) > 1:
            other = lat.subgroups[members[1]]
            check = h1_kernel_order(f, other)
            assert check == order, "conjugate subgroups must give equal H^1 kernels"
        out *= Fraction(order) ** n
    return out
