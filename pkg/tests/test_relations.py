import pytest

from brauerreg.groups import (
    embedding_into_subgroup,
    preset,
    quotient,
    subgroup_lattice,
)
from brauerreg.relations import (
    BrauerRelation,
    fixed_point_count,
    induce,
    inflate,
    is_relation,
    marks_matrix,
    relation_lattice,
    restrict,
)

NONCYCLIC = ["V4", "S3", "D4", "Q8", "C2xC2xC2", "C2xC4", "A4"]
CYCLIC = [f"C{n}" for n in range(1, 13)]


def test_fixed_point_count_documented():
    g = preset("V4")
    lat = subgroup_lattice(g)
    triv, h1, h2, full = lat.reps[0], lat.reps[1], lat.reps[2], lat.reps[4]
    assert fixed_point_count(triv, h2) == h2.index  # c = {e} -> [G:H]
    assert fixed_point_count(full, full) == 1
    # distinct order-2 subgroups of V4 do not fix each other's cosets
    assert fixed_point_count(h1, h2) == 0


def test_fixed_point_count_is_permutation_character():
    # fix(c, G/H) recomputed by directly acting on cosets
    g = preset("S3")
    lat = subgroup_lattice(g)
    for c in lat.reps:
        for h in lat.reps:
            cosets = {}
            for x in g.elements():
                key = frozenset(g.mul(x, a) for a in h.elements)
                cosets[key] = key
            fixed = sum(
                1 for key in cosets
                if all(frozenset(g.mul(a, x) for x in key) == key for a in c.elements)
            )
            assert fixed == fixed_point_count(c, h)


def test_relation_lattice_cyclic_vs_not():
    for name in CYCLIC:
        assert relation_lattice(preset(name)) == []
    for name in NONCYCLIC:
        assert relation_lattice(preset(name))


def test_documented_basis_vectors():
    assert [r.as_vector() for r in relation_lattice(preset("V4"))] == [(1, -1, -1, -1, 2)]
    assert [r.as_vector() for r in relation_lattice(preset("S3"))] == [(1, -2, -1, 2)]


def test_relation_sanity_sums():
    for name in NONCYCLIC:
        for r in relation_lattice(preset(name)):
            assert r.coefficient_sum() == 0
            assert r.degree_sum() == 0


def test_is_relation():
    v4 = preset("V4")
    assert is_relation(BrauerRelation(v4, {}))
    assert is_relation(relation_lattice(v4)[0])
    c2 = preset("C2")
    # {1} - G in C2 has fix counts (2,0) vs (1,1): not a relation
    assert not is_relation(BrauerRelation(c2, {0: 1, 1: -1}))


def test_marks_matrix_v4():
    m = marks_matrix(preset("V4"))
    assert (m.rows, m.cols) == (4, 5)
    assert m.entries[0] == (4, 2, 2, 2, 1)  # trivial row: indices


def test_induce_into_d4():
    v4 = preset("V4")
    d4 = preset("D4")
    target = next(
        s for s in subgroup_lattice(d4).subgroups
        if s.order == 4 and all(d4.element_order(a) in (1, 2) for a in s.elements)
    )
    emb = embedding_into_subgroup(v4, target)
    theta = relation_lattice(v4)[0]
    ind = induce(theta, emb)
    assert ind.group is d4
    assert is_relation(ind)
    assert not ind.is_zero()
    # identity embedding keeps the relation
    from brauerreg.groups import identity_hom

    same = induce(theta, identity_hom(v4))
    assert same.coeffs == theta.coeffs
    zero = induce(BrauerRelation(v4, {}), emb)
    assert zero.is_zero()


def test_restrict_documented_mackey():
    v4 = preset("V4")
    lat = subgroup_lattice(v4)
    theta = relation_lattice(v4)[0]
    # restricting the V4 relation to an order-2 subgroup collapses to zero:
    # 2*{1} - 2*H1 - {1} - {1} + 2*H1 = 0, shown termwise in the Mackey sum
    res = restrict(theta, lat.reps[1])
    assert res.is_zero()
    # termwise: the {1}-term contributes 2 trivial classes, each Hi-term with
    # i != 1 contributes one trivial class, H1 and G contribute H1 itself
    h1 = lat.reps[1]
    from brauerreg.groups import double_cosets

    assert len(double_cosets(lat.reps[0], h1)) == 2
    assert len(double_cosets(lat.reps[2], h1)) == 1
    # restrict to whole group is the identity
    full = lat.reps[lat.full_class()]
    back = restrict(theta, full)
    assert back.as_vector() == theta.as_vector()

    s3 = preset("S3")
    c3 = next(s for s in subgroup_lattice(s3).reps if s.order == 3)
    assert restrict(relation_lattice(s3)[0], c3).is_zero()


def test_restrict_outputs_relations():
    d4 = preset("D4")
    lat = subgroup_lattice(d4)
    for theta in relation_lattice(d4):
        for rep in lat.reps:
            assert is_relation(restrict(theta, rep))


def test_inflate_documented():
    d4 = preset("D4")
    center = next(s for s in subgroup_lattice(d4).reps if s.order == 2 and s.is_normal())
    q, proj = quotient(d4, center)
    # q is V4; move the V4 relation along an isomorphism then inflate
    from brauerreg.groups import find_isomorphism

    v4 = preset("V4")
    iso = find_isomorphism(v4, q)
    assert iso is not None
    theta = relation_lattice(v4)[0]
    theta_q = induce(theta, iso)
    infl = inflate(theta_q, proj)
    assert infl.group is d4
    assert is_relation(infl)
    assert not infl.is_zero()
    # identity quotient keeps the relation
    qq, projq = quotient(v4, subgroup_lattice(v4).reps[0])
    iso2 = find_isomorphism(qq, v4)
    rel_qq = induce(theta, find_isomorphism(v4, qq))
    same = inflate(rel_qq, projq)
    # inflating along the trivial quotient is a relabeling; still a relation
    assert is_relation(same) and not same.is_zero()
    # zero relation inflates to zero along G ->> C1
    qg, projg = quotient(v4, subgroup_lattice(v4).reps[-1])
    zero = inflate(BrauerRelation(qg, {}), projg)
    assert zero.is_zero()


def test_relation_json_roundtrip():
    v4 = preset("V4")
    theta = relation_lattice(v4)[0]
    again = BrauerRelation.from_json(theta.to_json())
    assert again.group is v4 and again.coeffs == theta.coeffs


def test_bad_class_index_rejected():
    with pytest.raises(ValueError):
        BrauerRelation(preset("V4"), {99: 1})
