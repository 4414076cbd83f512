"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line with its runtime and asserting the stated time budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""

import math
import time
from fractions import Fraction
from importlib.resources import files

from brauerreg.exactlinalg import IntMatrix
from brauerreg.gmodules import (
    GMap,
    GModule,
    augmentation_ideal,
    augmentation_map,
    dual_lattice,
    permutation_module,
    regular_module,
    trivial_module,
)
from brauerreg.groups import (
    embedding_into_subgroup,
    find_isomorphism,
    preset,
    quotient,
    subgroup_lattice,
)
from brauerreg.inertial import (
    LocalGaloisDatum,
    check_dual_cohomology_shift,
    check_w_dual_trivial,
    inertial_lattice,
    valid_local_data,
    ws_regulator_constant,
)
from brauerreg.regconst import (
    check_cohomologically_trivial,
    check_functoriality,
    check_multiplicativity,
    regulator_constant,
    regulator_constant_homological,
)
from brauerreg.relations import induce, inflate, relation_lattice, restrict
from brauerreg.verify import load_fixture, verify_fixture

CYCLIC = [f"C{n}" for n in range(1, 13)]
NONCYCLIC = ["V4", "S3", "D4", "Q8", "C2xC2xC2", "C2xC4", "A4"]


class budget:
    """Context manager printing the PASS/FAIL line and enforcing the budget."""

    def __init__(self, name: str, seconds: float):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status}: {self.name} ({elapsed:.2f}s, budget {self.seconds:.0f}s)")
        if exc_type is None:
            assert elapsed < self.seconds, f"{self.name} exceeded budget: {elapsed:.2f}s"
        return False


def sign_lattice(group, kernel_elements):
    one = IntMatrix.identity(1)
    neg = IntMatrix(1, 1, [[-1]])
    return GModule(
        group, 1, IntMatrix.zeros(1, 0),
        tuple(one if g in kernel_elements else neg for g in group.elements()),
    )


def torsion_twist(group, kernel_elements, m):
    one = IntMatrix.identity(1)
    neg = IntMatrix(1, 1, [[-1]])
    return GModule(
        group, 1, IntMatrix(1, 1, [[m]]),
        tuple(one if g in kernel_elements else neg for g in group.elements()),
    )


def test_relation_existence():
    with budget("relation existence (cyclic none, noncyclic some)", 5):
        for name in CYCLIC:
            assert relation_lattice(preset(name)) == [], name
        for name in NONCYCLIC:
            assert relation_lattice(preset(name)) != [], name


def test_free_triviality_both_paths():
    with budget("free modules have trivial regulator constants", 10):
        for name in CYCLIC + NONCYCLIC:
            g = preset(name)
            relations = relation_lattice(g)
            if not relations:
                continue
            reg = regular_module(g)
            for theta in relations:
                assert regulator_constant(theta, reg) == 1, name
                assert regulator_constant_homological(theta, reg) == 1, name


def _path_agreement_catalog(g):
    lat = subgroup_lattice(g)
    aug = augmentation_ideal(g)[0]
    catalog = [trivial_module(g), aug, dual_lattice(aug)]
    for rep in lat.reps:
        catalog.append(permutation_module(g, rep))
    catalog.append(dual_lattice(permutation_module(g, lat.reps[1])))
    index2 = [s for s in lat.subgroups if s.index == 2]
    for m in (2, 3, 4):
        catalog.append(trivial_module(g, m))
        if index2 and m > 2:
            catalog.append(torsion_twist(g, set(index2[0].elements), m))
    datum = valid_local_data(g)[0]
    from brauerreg.inertial import dual_inertial

    catalog.append(dual_inertial(inertial_lattice(datum)))
    return catalog


def test_path_agreement():
    with budget("pairing and homological paths agree on the module catalog", 120):
        for name in ("V4", "S3", "D4", "Q8"):
            g = preset(name)
            for theta in relation_lattice(g):
                for m in _path_agreement_catalog(g):
                    expected = regulator_constant(theta, m)
                    for seed in (0, 1, 2):
                        got = regulator_constant_homological(theta, m, seed=seed)
                        assert got == expected, (name, m, seed)


def test_multiplicativity():
    with budget("multiplicativity with Kani defect", 30):
        from brauerreg.gmodules import direct_sum

        for name in ("V4", "S3"):
            g = preset(name)
            theta = relation_lattice(g)[0]
            # augmentation sequence 0 -> Delta G -> Z[G] -> Z -> 0
            aug, incl = augmentation_ideal(g)
            rep = check_multiplicativity(theta, incl, augmentation_map(g))
            assert rep.holds
            # torsion sequences 0 -> Z -(x m)-> Z -> Z/m -> 0, m = 2, 3
            z = trivial_module(g)
            for m in (2, 3):
                f = GMap(z, z, IntMatrix(1, 1, [[m]]))
                proj = GMap(z, trivial_module(g, m), IntMatrix.identity(1))
                rep = check_multiplicativity(theta, f, proj)
                assert rep.holds
            # split sequences have defect 1 and multiplicative constants
            s = direct_sum(aug, z)
            incl_s = GMap(aug, s, IntMatrix(
                aug.gens + 1, aug.gens,
                [[1 if i == j else 0 for j in range(aug.gens)] for i in range(aug.gens + 1)],
            ))
            proj_s = GMap(s, z, IntMatrix(1, aug.gens + 1, [[0] * aug.gens + [1]]))
            rep = check_multiplicativity(theta, incl_s, proj_s)
            assert rep.holds and rep.defect == 1
            assert rep.c_total == rep.c_sub * rep.c_quot


def test_cohomological_triviality():
    with budget("cohomologically trivial modules have constant 1", 30):
        for name in NONCYCLIC:
            g = preset(name)
            relations = relation_lattice(g)
            reg_action = regular_module(g).action
            for m in (2, 3, 6):
                mod = GModule(
                    g,
                    g.order,
                    IntMatrix(g.order, g.order,
                              [[m if i == j else 0 for j in range(g.order)] for i in range(g.order)]),
                    reg_action,
                    check=False,
                )
                for theta in relations:
                    rep = check_cohomologically_trivial(theta, mod)
                    assert rep.holds, (name, m)


def test_functoriality():
    with budget("Ind/Res/Inf functoriality on the documented instances", 30):
        v4 = preset("V4")
        d4 = preset("D4")
        theta = relation_lattice(v4)[0]
        # (i) V4 <= D4 with N = Z[D4]
        target = next(
            s for s in subgroup_lattice(d4).subgroups
            if s.order == 4 and all(d4.element_order(a) in (1, 2) for a in s.elements)
        )
        emb = embedding_into_subgroup(v4, target)
        rep = check_functoriality(theta, "ind", embedding=emb, module=regular_module(d4))
        assert rep.holds and rep.left == 1
        # (ii) Y = H1 <= V4, N = sign lattice: both sides 1 since Res Theta = 0
        lat = subgroup_lattice(v4)
        h1 = lat.reps[1]
        h1_abs, _ = h1.as_group()
        rep = check_functoriality(theta, "res", subgroup=h1, module=sign_lattice(h1_abs, {0}))
        assert rep.holds and rep.left == 1 and rep.right == 1
        # (iii) V4 relation inflated to D4, M = Z: constants agree
        center = next(s for s in subgroup_lattice(d4).reps if s.order == 2 and s.is_normal())
        q, proj = quotient(d4, center)
        theta_q = induce(theta, find_isomorphism(v4, q))
        rep = check_functoriality(theta_q, "inf", projection=proj, module=trivial_module(q))
        assert rep.holds
        assert rep.right == regulator_constant(theta_q, trivial_module(q))


def test_inertial_lemma():
    with budget("C(W*) = 1 for all valid local data plus h1/h2 shift", 120):
        for name in ("V4", "D4", "Q8", "C2xC4"):
            g = preset(name)
            relations = relation_lattice(g)
            for datum in valid_local_data(g):
                lat = inertial_lattice(datum)
                check_dual_cohomology_shift(lat)
                for theta in relations:
                    rep = check_w_dual_trivial(lat, theta)
                    assert rep.holds, (name, datum.inertia.elements, datum.frobenius)


def test_ws_aggregate():
    with budget("semilocal W_S aggregate on G = D4, G_P = V4", 30):
        d4 = preset("D4")
        lat = subgroup_lattice(d4)
        v4sub = next(
            s for s in lat.subgroups
            if s.order == 4 and all(d4.element_order(a) in (1, 2) for a in s.elements)
        )
        v4_abs, _ = v4sub.as_group()
        inertia = next(s for s in subgroup_lattice(v4_abs).reps if s.order == 2)
        phi = next(a for a in v4_abs.elements() if a not in inertia)
        datum = LocalGaloisDatum(v4_abs, inertia, phi)
        for theta in relation_lattice(d4):
            rep = ws_regulator_constant(d4, theta, [(v4sub, datum)])
            assert rep.holds and rep.value_direct == 1


def test_end_to_end_zeta8():
    with budget("end-to-end Brauer class number formula on Q(zeta8)", 5):
        fixture = load_fixture(files("brauerreg") / "fixtures" / "zeta8.json")
        theta = relation_lattice(fixture.group)[0]
        from brauerreg.verify import c_units, c_z, c_zs

        assert math.isclose(c_units(fixture, theta), 0.5, rel_tol=1e-12)
        assert c_z(fixture, theta) == Fraction(1, 2)
        assert c_zs(fixture, theta) == Fraction(1)
        report = verify_fixture(fixture, theta, tol=1e-9)
        assert report.all_pass, [c.name for c in report.checks if not c.passed]


def test_relation_sanity():
    with budget("every produced relation has zero degree and coefficient sums", 30):
        produced = []
        for name in CYCLIC + NONCYCLIC:
            produced.extend(relation_lattice(preset(name)))
        # derived relations: restrictions, inductions and inflations
        v4 = preset("V4")
        d4 = preset("D4")
        theta = relation_lattice(v4)[0]
        for rep in subgroup_lattice(v4).reps:
            produced.append(restrict(theta, rep))
        target = next(
            s for s in subgroup_lattice(d4).subgroups
            if s.order == 4 and all(d4.element_order(a) in (1, 2) for a in s.elements)
        )
        produced.append(induce(theta, embedding_into_subgroup(v4, target)))
        center = next(s for s in subgroup_lattice(d4).reps if s.order == 2 and s.is_normal())
        q, proj = quotient(d4, center)
        produced.append(inflate(induce(theta, find_isomorphism(v4, q)), proj))
        for r in produced:
            assert r.coefficient_sum() == 0
            assert r.degree_sum() == 0
