"""Finite groups by Cayley table: construction from permutation generators, a
small named catalog, subgroup lattices up to conjugacy, double cosets and
quotients.  Elements are opaque indices 0..order-1 with identity 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class FiniteGroup:
    """Finite group given by its composition table over element indices."""

    __slots__ = ("order", "table", "inverse", "name", "_lattice", "_cache")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", check: bool = True):
        n = len(table)
        self.order = n
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        self._lattice = None
        self._cache = {}
        if any(len(row) != n for row in self.table):
            raise ValueError("composition table must be square")
        inverse = [None] * n
        if check:
            self._check_axioms()
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == 0:
                    if inverse[a] is not None and inverse[a] != b:
                        raise ValueError("non-unique inverses")
                    inverse[a] = b
        if any(x is None for x in inverse):
            raise ValueError("missing inverses")
        self.inverse = tuple(inverse)

    def _check_axioms(self) -> None:
        n = self.order
        t = self.table
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise ValueError("index 0 is not an identity")
        for a in range(n):
            for b in range(n):
                tab = t[a][b]
                for c in range(n):
                    if t[tab][c] != t[a][t[b][c]]:
                        raise ValueError("composition table is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, g: int) -> int:
        """g a g^-1."""
        return self.table[self.table[g][a]][self.inverse[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order) for b in range(a)
        )

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p*q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def from_generators(degree: int, perms: Iterable[Sequence[int]], name: str = "") -> FiniteGroup:
    """Closure group of permutations on 0..degree-1, elements ordered by BFS
    from the identity over the generators (so the ordering is canonical)."""
    if degree <= 0:
        raise ValueError("degree must be positive")
    gens = []
    for p in perms:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(p)
    ident = tuple(range(degree))
    index = {ident: 0}
    order_list = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for elem in frontier:
            for g in gens:
                prod = _compose(elem, g)
                if prod not in index:
                    index[prod] = len(order_list)
                    order_list.append(prod)
                    nxt.append(prod)
        frontier = nxt
    n = len(order_list)
    table = [[index[_compose(order_list[a], order_list[b])] for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=name)


def _cycle(n: int) -> tuple[int, ...]:
    return tuple((i + 1) % n for i in range(n))


# Fixed generator sets; the element ordering of every preset is bit-stable.
_PRESETS: dict[str, tuple[int, list[tuple[int, ...]]]] = {
    "C1": (1, []),
    "V4": (4, [(1, 0, 3, 2), (2, 3, 0, 1)]),
    "S3": (3, [(1, 0, 2), (1, 2, 0)]),
    "D4": (4, [(1, 2, 3, 0), (3, 2, 1, 0)]),
    "Q8": (8, [(2, 3, 1, 0, 6, 7, 5, 4), (4, 5, 7, 6, 1, 0, 2, 3)]),
    "C2xC2xC2": (6, [(1, 0, 2, 3, 4, 5), (0, 1, 3, 2, 4, 5), (0, 1, 2, 3, 5, 4)]),
    "C2xC4": (6, [(1, 0, 2, 3, 4, 5), (0, 1, 3, 4, 5, 2)]),
    "A4": (4, [(1, 2, 0, 3), (1, 0, 3, 2)]),
}
for _n in range(2, 13):
    _PRESETS[f"C{_n}"] = (_n, [_cycle(_n)])

_preset_cache: dict[str, FiniteGroup] = {}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def preset(name: str) -> FiniteGroup:
    """Catalog group by name (C1..C12, V4, S3, D4, Q8, C2xC2xC2, C2xC4, A4).

    Instances are cached, so repeated calls return the same object."""
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    if name not in _preset_cache:
        degree, gens = _PRESETS[name]
        _preset_cache[name] = from_generators(degree, gens, name=name)
    return _preset_cache[name]


@dataclass(frozen=True)
class Subgroup:
    """Subgroup as a sorted element-index set of a parent group."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        g = self.parent
        s = set(elems)
        if 0 not in s:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if g.inv(a) not in s:
                raise ValueError("subgroup not closed under inverses")
            for b in elems:
                if g.mul(a, b) not in s:
                    raise ValueError("subgroup not closed under composition")
        if g.order % len(elems) != 0:
            raise ValueError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)

    def conjugate(self, g: int) -> "Subgroup":
        p = self.parent
        return Subgroup(p, tuple(p.conj(a, g) for a in self.elements))

    def is_normal(self) -> bool:
        p = self.parent
        s = set(self.elements)
        return all(p.conj(a, g) in s for g in p.elements() for a in self.elements)

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(a) == self.order for a in self.elements)

    def as_group(self) -> tuple[FiniteGroup, "GroupHom"]:
        """Abstract copy of this subgroup plus the embedding into the parent.

        Element i of the abstract group is self.elements[i]; the parent
        identity sorts first so index 0 stays the identity."""
        key = ("as_group", self.elements)
        cached = self.parent._cache.get(key)
        if cached is None:
            elems = self.elements
            pos = {e: i for i, e in enumerate(elems)}
            table = [[pos[self.parent.mul(a, b)] for b in elems] for a in elems]
            sub = FiniteGroup(table, name=f"{self.parent.name}|{elems}", check=False)
            cached = (sub, GroupHom(sub, self.parent, elems))
            self.parent._cache[key] = cached
        return cached


def subgroup_from_elements(group: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    return Subgroup(group, tuple(elements))


def generated_subgroup(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    seen = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(group, tuple(seen))


@dataclass
class SubgroupLattice:
    """All subgroups of a group, partitioned into conjugacy classes.

    Class representatives are the lexicographically minimal element sets in
    their class; classes are sorted by (order, elements) of the representative,
    so class indices are stable and the trivial class is 0."""

    group: FiniteGroup
    subgroups: list[Subgroup]
    classes: list[list[int]] = field(default_factory=list)
    reps: list[Subgroup] = field(default_factory=list)
    cyclic_flags: list[bool] = field(default_factory=list)
    _class_of: dict[tuple[int, ...], int] = field(default_factory=dict)

    def class_of(self, s: Subgroup) -> int:
        return self._class_of[s.elements]

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    def cyclic_class_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.cyclic_flags) if f]

    def trivial_class(self) -> int:
        return self._class_of[(0,)]

    def full_class(self) -> int:
        return self._class_of[tuple(self.group.elements())]


def subgroup_lattice(group: FiniteGroup) -> SubgroupLattice:
    """Every subgroup of `group`.

    Enumeration: all cyclic subgroups, then close under pairwise joins until a
    fixpoint; fine for the catalog orders (<= 24)."""
    if group._lattice is not None:
        return group._lattice
    found: set[tuple[int, ...]] = set()
    for a in group.elements():
        found.add(generated_subgroup(group, [a]).elements)
    while True:
        pairs = list(found)
        new = set()
        for i, s in enumerate(pairs):
            for t in pairs[: i]:
                if set(t) <= set(s) or set(s) <= set(t):
                    continue
                j = generated_subgroup(group, set(s) | set(t)).elements
                if j not in found:
                    new.add(j)
        if not new:
            break
        found |= new
    subs = [Subgroup(group, els) for els in sorted(found, key=lambda e: (len(e), e))]
    for s in subs:
        assert group.order % s.order == 0  # Lagrange
    index_of = {s.elements: i for i, s in enumerate(subs)}
    assigned: dict[tuple[int, ...], int] = {}
    classes: list[list[int]] = []
    for i, s in enumerate(subs):
        if s.elements in assigned:
            continue
        orbit = sorted({s.conjugate(g).elements for g in group.elements()})
        cls = len(classes)
        classes.append([index_of[e] for e in orbit])
        for e in orbit:
            assigned[e] = cls
    # sorting subgroups already sorts representatives (minimal member first)
    reps = [subs[members[0]] for members in classes]
    lat = SubgroupLattice(
        group=group,
        subgroups=subs,
        classes=classes,
        reps=reps,
        cyclic_flags=[r.is_cyclic() for r in reps],
        _class_of=assigned,
    )
    group._lattice = lat
    return lat


def double_cosets(h: Subgroup, k: Subgroup) -> list[int]:
    """Minimal-index representatives of the double cosets H\\G/K."""
    if h.parent is not k.parent:
        raise ValueError("subgroups of different parent groups")
    g = h.parent
    covered = [False] * g.order
    reps = []
    for x in g.elements():
        if covered[x]:
            continue
        reps.append(x)
        for a in h.elements:
            ax = g.mul(a, x)
            for b in k.elements:
                covered[g.mul(ax, b)] = True
    return reps


@dataclass(frozen=True)
class GroupHom:
    """Group homomorphism recorded on every element of the source."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.order:
            raise ValueError("need one image per source element")
        for a in self.source.elements():
            for b in self.source.elements():
                if imgs[self.source.mul(a, b)] != self.target.mul(imgs[a], imgs[b]):
                    raise ValueError("images do not define a homomorphism")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def image_subgroup(self, s: Subgroup | None = None) -> Subgroup:
        elems = self.images if s is None else [self.images[a] for a in s.elements]
        return Subgroup(self.target, tuple(set(elems)))

    def preimage_subgroup(self, s: Subgroup) -> Subgroup:
        members = set(s.elements)
        return Subgroup(self.source, tuple(a for a in self.source.elements() if self.images[a] in members))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.target is not self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return GroupHom(other.source, self.target, tuple(self.images[x] for x in other.images))


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(group.elements()))


def quotient(group: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient group G/N with the projection, for N normal in G.

    Cosets are ordered with N first, then by minimal element, so the quotient
    identity is index 0."""
    if n.parent is not group:
        raise ValueError("subgroup of a different group")
    if not n.is_normal():
        raise ValueError("subgroup is not normal")
    coset_of: dict[int, int] = {}
    coset_reps: list[int] = []
    cosets: list[frozenset[int]] = []
    for x in group.elements():
        if x in coset_of:
            continue
        members = frozenset(group.mul(x, a) for a in n.elements)
        rep = min(members)
        idx = len(cosets)
        cosets.append(members)
        coset_reps.append(rep)
        for m in members:
            coset_of[m] = idx
    # reorder: identity coset first, then by minimal element
    order_keys = sorted(range(len(cosets)), key=lambda i: (0 not in cosets[i], coset_reps[i]))
    relabel = {old: new for new, old in enumerate(order_keys)}
    reps = [coset_reps[i] for i in order_keys]
    table = [
        [relabel[coset_of[group.mul(reps[a], reps[b])]] for b in range(len(reps))]
        for a in range(len(reps))
    ]
    q = FiniteGroup(table, name=f"{group.name}/N{len(n.elements)}", check=False)
    proj = GroupHom(group, q, tuple(relabel[coset_of[x]] for x in group.elements()))
    assert all(sum(1 for x in group.elements() if proj(x) == c) == n.order for c in q.elements())
    return q, proj


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> GroupHom | None:
    """Some isomorphism a -> b by backtracking on generator images, or None."""
    if a.order != b.order:
        return None
    gens: list[int] = []
    seen = generated_subgroup(a, [])
    for x in a.elements():
        if x not in set(seen.elements):
            gens.append(x)
            seen = generated_subgroup(a, gens)
            if seen.order == a.order:
                break
    orders_b: dict[int, list[int]] = {}
    for y in b.elements():
        orders_b.setdefault(b.element_order(y), []).append(y)

    def words_and_targets(images: list[int]) -> GroupHom | None:
        # extend the partial generator assignment into a full map by closure
        amap = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    xa = a.mul(x, g)
                    ya = b.mul(amap[x], img)
                    if xa in amap:
                        if amap[xa] != ya:
                            return None
                    else:
                        amap[xa] = ya
                        nxt.append(xa)
            frontier = nxt
        if len(amap) != a.order or len(set(amap.values())) != a.order:
            return None
        try:
            return GroupHom(a, b, tuple(amap[x] for x in a.elements()))
        except ValueError:
            return None

    def backtrack(i: int, images: list[int]) -> GroupHom | None:
        if i == len(gens):
            return words_and_targets(images)
        for y in orders_b.get(a.element_order(gens[i]), []):
            result = backtrack(i + 1, images + [y])
            if result is not None:
                return result
        return None

    return backtrack(0, [])


def embedding_into_subgroup(abstract: FiniteGroup, target: Subgroup) -> GroupHom | None:
    """Injective hom from `abstract` onto the given subgroup of its parent."""
    sub_abs, incl = target.as_group()
    iso = find_isomorphism(abstract, sub_abs)
    if iso is None:
        return None
    return incl.compose(iso)


def group_to_json(group: FiniteGroup) -> dict:
    if group.name in _PRESETS and preset(group.name) is group:
        return {"preset": group.name}
    # fall back to the left-regular permutation representation
    return {
        "degree": group.order,
        "generators": [[group.mul(g, x) for x in group.elements()] for g in group.elements()],
    }


def group_from_json(obj: dict) -> FiniteGroup:
    if "preset" in obj:
        return preset(obj["preset"])
    return from_generators(int(obj["degree"]), [tuple(p) for p in obj["generators"]])
