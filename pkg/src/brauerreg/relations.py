"""Brauer relations: integer combinations sum n_H H of subgroups whose virtual
permutation representation sum n_H Q[G/H] vanishes, found as the kernel of the
table of marks restricted to cyclic subgroups, plus induction, restriction
(Mackey) and inflation of relations.

Coefficients are stored on conjugacy-class representatives; since Q[G/H] and
Q[G/H^g] are isomorphic, only class totals matter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlinalg import IntMatrix, kernel_basis
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    SubgroupLattice,
    double_cosets,
    subgroup_from_elements,
    subgroup_lattice,
)


@dataclass(frozen=True)
class BrauerRelation:
    """Formal combination of subgroup classes with integer coefficients.

    coeffs maps a subgroup-class index of the group's lattice to n_H; absent
    classes have coefficient 0."""

    group: FiniteGroup
    coeffs: dict[int, int]

    def __post_init__(self):
        lat = subgroup_lattice(self.group)
        cleaned = {int(k): int(v) for k, v in self.coeffs.items() if int(v) != 0}
        if any(not 0 <= k < lat.num_classes for k in cleaned):
            raise ValueError("subgroup class index out of range")
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def lattice(self) -> SubgroupLattice:
        return subgroup_lattice(self.group)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, class_index: int) -> int:
        return self.coeffs.get(class_index, 0)

    def as_vector(self) -> tuple[int, ...]:
        return tuple(self.coeffs.get(i, 0) for i in range(self.lattice.num_classes))

    def support(self) -> list[tuple[int, Subgroup, int]]:
        """(class index, representative subgroup, coefficient) for n_H != 0."""
        lat = self.lattice
        return [(i, lat.reps[i], n) for i, n in sorted(self.coeffs.items())]

    def degree_sum(self) -> int:
        """sum n_H [G:H], the dimension of the virtual representation."""
        lat = self.lattice
        return sum(n * lat.reps[i].index for i, n in self.coeffs.items())

    def coefficient_sum(self) -> int:
        return sum(self.coeffs.values())

    def __str__(self) -> str:
        lat = self.lattice
        parts = []
        for i, n in sorted(self.coeffs.items()):
            parts.append(f"{n:+d}*[{','.join(map(str, lat.reps[i].elements))}]")
        return " ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        from .groups import group_to_json

        return {
            "group": group_to_json(self.group),
            "terms": [
                {"subgroup_class": i, "coeff": n} for i, n in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, group: FiniteGroup | None = None) -> "BrauerRelation":
        from .groups import group_from_json

        if group is None:
            group = group_from_json(obj["group"])
        coeffs = {int(t["subgroup_class"]): int(t["coeff"]) for t in obj["terms"]}
        return cls(group, coeffs)


def fixed_point_count(c: Subgroup, h: Subgroup) -> int:
    """#{gH in G/H : c g H = g H for every c in C} = #{g : g^-1 C g <= H}/|H|."""
    if c.parent is not h.parent:
        raise ValueError("subgroups of different parent groups")
    g = c.parent
    members = set(h.elements)
    count = 0
    for x in g.elements():
        xi = g.inv(x)
        if all(g.mul(g.mul(xi, a), x) in members for a in c.elements):
            count += 1
    assert count % h.order == 0
    return count // h.order


def marks_matrix(group: FiniteGroup) -> IntMatrix:
    """Rows: cyclic subgroup classes; columns: all subgroup classes; entries
    fix(C, G/H).  Its integer kernel is the lattice of Brauer relations."""
    lat = subgroup_lattice(group)
    cyc = lat.cyclic_class_indices()
    return IntMatrix(
        len(cyc), lat.num_classes,
        [[fixed_point_count(lat.reps[c], rep) for rep in lat.reps] for c in cyc],
    )


def is_relation(r: BrauerRelation) -> bool:
    """True iff the fixed-point character vanishes on every cyclic subgroup."""
    m = marks_matrix(r.group)
    vec = r.as_vector()
    return all(sum(a * b for a, b in zip(row, vec)) == 0 for row in m.entries)


def relation_lattice(group: FiniteGroup) -> list[BrauerRelation]:
    """Basis of the lattice of Brauer relations (empty iff the group is cyclic;
    canonical via column HNF of the marks-matrix kernel)."""
    lat = subgroup_lattice(group)
    basis = kernel_basis(marks_matrix(group))
    out = []
    for j in range(basis.cols):
        rel = BrauerRelation(group, {i: basis.entries[i][j] for i in range(lat.num_classes)})
        assert is_relation(rel)
        assert rel.coefficient_sum() == 0 and rel.degree_sum() == 0
        out.append(rel)
    return out


def _collect(group: FiniteGroup, pieces: list[tuple[Subgroup, int]]) -> BrauerRelation:
    lat = subgroup_lattice(group)
    coeffs: dict[int, int] = {}
    for sub, n in pieces:
        cls = lat.class_of(sub)
        coeffs[cls] = coeffs.get(cls, 0) + n
    return BrauerRelation(group, coeffs)


def induce(r: BrauerRelation, embedding: GroupHom) -> BrauerRelation:
    """Regard the relation's subgroups as subgroups of the bigger group via an
    injective homomorphism."""
    if embedding.source is not r.group:
        raise ValueError("embedding source is not the relation's group")
    if not embedding.is_injective():
        raise ValueError("embedding must be injective")
    pieces = []
    for _, rep, n in r.support():
        image = embedding.image_subgroup(rep)
        pieces.append((image, n))
    out = _collect(embedding.target, pieces)
    assert is_relation(out)
    return out


def restrict(r: BrauerRelation, y: Subgroup) -> BrauerRelation:
    """Mackey restriction: Res_Y Theta = sum_H sum_{g in H\\G/Y} n_H (Y n H^{g^-1}),
    returned as a relation in the abstract copy of Y."""
    if y.parent is not r.group:
        raise ValueError("subgroup of a different group")
    g = r.group
    y_abs, incl = y.as_group()
    into_y = {incl(i): i for i in y_abs.elements()}
    pieces = []
    for _, rep, n in r.support():
        members = set(rep.elements)
        for x in double_cosets(rep, y):
            # Y n H^{x^-1} with H^{x^-1} = x^-1 H x
            xi = g.inv(x)
            inter = [e for e in y.elements if g.mul(g.mul(x, e), xi) in members]
            sub = subgroup_from_elements(y_abs, tuple(into_y[e] for e in inter))
            pieces.append((sub, n))
    out = _collect(y_abs, pieces)
    assert is_relation(out)
    return out


def inflate(r: BrauerRelation, projection: GroupHom) -> BrauerRelation:
    """Attach n_H to the preimage of H under a surjection Z ->> G."""
    if projection.target is not r.group:
        raise ValueError("projection target is not the relation's group")
    if not projection.is_surjective():
        raise ValueError("projection must be surjective")
    pieces = []
    for _, rep, n in r.support():
        pieces.append((projection.preimage_subgroup(rep), n))
    out = _collect(projection.source, pieces)
    assert is_relation(out)
    return out
