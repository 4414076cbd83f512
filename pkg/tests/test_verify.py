import json
import math
from fractions import Fraction
from importlib.resources import files

import pytest

from brauerreg.groups import preset, subgroup_lattice
from brauerreg.relations import BrauerRelation, relation_lattice
from brauerreg.verify import (
    FixtureError,
    c_units,
    c_z,
    c_zs,
    check_bcnf,
    check_thm_rccln,
    check_thm_rcreg,
    load_fixture,
    verify_fixture,
)

ZETA8 = files("brauerreg") / "fixtures" / "zeta8.json"
X3M2 = files("brauerreg") / "fixtures" / "x3m2.json"


@pytest.fixture(scope="module")
def zeta8():
    return load_fixture(ZETA8)


@pytest.fixture(scope="module")
def x3m2():
    return load_fixture(X3M2)


def test_fixture_loading(zeta8, x3m2):
    assert zeta8.group is preset("V4")
    assert len(zeta8.classes) == 5
    assert zeta8.s_orbits == (2,)
    assert x3m2.group is preset("S3")
    assert x3m2.classes[0].unit_rank == 2


def test_c_z_documented(zeta8, x3m2):
    theta = relation_lattice(zeta8.group)[0]
    assert c_z(zeta8, theta) == Fraction(1, 2)
    assert c_z(zeta8, BrauerRelation(zeta8.group, {})) == 1
    theta3 = relation_lattice(x3m2.group)[0]
    assert c_z(x3m2, theta3) == Fraction(1, 3)


def test_c_zs_documented(zeta8):
    theta = relation_lattice(zeta8.group)[0]
    assert c_zs(zeta8, theta) == 1
    # G_P = G for all orbits reduces to C(Z); G_P = {e} gives C(Z[G]) = 1
    lat = subgroup_lattice(zeta8.group)
    top = load_fixture(_patched(zeta8, s_orbits=[lat.full_class()]))
    assert c_zs(top, theta) == c_z(zeta8, theta)
    free = load_fixture(_patched(zeta8, s_orbits=[0]))
    assert c_zs(free, theta) == 1


def _patched(fx, **kw):
    obj = json.loads((files("brauerreg") / "fixtures" / "zeta8.json").read_text())
    obj.update(kw)
    return obj


def test_c_units_documented(zeta8):
    theta = relation_lattice(zeta8.group)[0]
    assert math.isclose(c_units(zeta8, theta), 0.5, rel_tol=1e-12)
    assert c_units(zeta8, BrauerRelation(zeta8.group, {})) == 1.0


def test_zeta8_checks_pass(zeta8):
    theta = relation_lattice(zeta8.group)[0]
    assert check_bcnf(zeta8, theta).passed
    assert check_thm_rccln(zeta8, theta).passed
    assert check_thm_rcreg(zeta8, theta).passed
    report = verify_fixture(zeta8, theta)
    assert report.all_pass
    assert report.exact["c_z"] == "1/2"
    assert report.exact["c_zs"] == "1"
    assert report.notes["hilbert_q_implied"] == "2"


def test_x3m2_checks_pass(x3m2):
    theta = relation_lattice(x3m2.group)[0]
    report = verify_fixture(x3m2, theta)
    assert report.all_pass
    assert math.isclose(c_units(x3m2, theta), 1 / 3, rel_tol=1e-12)
    assert report.exact["c_z"] == "1/3"
    assert report.exact["c_zs"] == "1"


def test_zero_relation_trivial(zeta8):
    zero = BrauerRelation(zeta8.group, {})
    report = verify_fixture(zeta8, zero)
    assert report.all_pass
    for c in report.checks:
        if c.name != "consistency":
            assert c.left == 1.0 and c.right == 1.0


def test_tampered_fixture_fails(zeta8):
    obj = _patched(zeta8)
    obj["classes"][0]["h"] = 2  # wrong class number
    bad = load_fixture(obj)
    theta = relation_lattice(bad.group)[0]
    report = verify_fixture(bad, theta)
    assert not report.all_pass
    names = [c.name for c in report.checks if not c.passed]
    assert "bcnf" in names and "rccln" in names
    # consistency self-check still holds: the three checks fail coherently
    assert all(c.passed for c in report.checks if c.name == "consistency")


def test_fixture_schema_errors():
    with pytest.raises(FixtureError):
        load_fixture({"schema": 2, "label": "", "group": {}, "classes": [], "s_orbits": []})
    with pytest.raises(FixtureError):
        load_fixture({"schema": 1, "label": "x"})
    obj = _patched(None)
    obj["classes"][0]["h"] = 0
    with pytest.raises(FixtureError):
        load_fixture(obj)
    obj = _patched(None)
    obj["classes"][0]["unit_gram"] = [["-1.0"]]
    with pytest.raises(FixtureError):
        load_fixture(obj)
    obj = _patched(None)
    obj["s_orbits"] = [99]
    with pytest.raises(FixtureError):
        load_fixture(obj)


def test_missing_class_data_rejected(zeta8):
    obj = _patched(None)
    obj["classes"] = obj["classes"][:2]
    partial = load_fixture(obj)
    theta = relation_lattice(partial.group)[0]
    with pytest.raises(FixtureError):
        c_units(partial, theta)


def test_consistency_identity_documented(zeta8):
    # (bcnf discrepancy)^2 = rccln-ratio / rcreg-ratio even on tampered data
    obj = _patched(None)
    obj["classes"][2]["reg"] = "0.9"
    bad = load_fixture(obj)
    theta = relation_lattice(bad.group)[0]
    report = verify_fixture(bad, theta)
    consistency = [c for c in report.checks if c.name == "consistency"][0]
    assert consistency.passed
