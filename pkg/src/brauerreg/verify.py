"""Number-field verification harness: consume per-subfield fixtures (class
numbers, roots of unity, regulators, unit-pairing Grams, decomposition data)
and check Brauer's class number formula together with the two theorems that
express the regulator constant of the unit lattice through class numbers and
through regulators.

Exact quantities (C(Z), C(Z[S]), class-number products) stay rational; only
fixture decimals are evaluated in 64-bit floating point.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .gmodules import direct_sum, permutation_module
from .groups import FiniteGroup, group_from_json, subgroup_lattice
from .regconst import regulator_constant
from .relations import BrauerRelation

FIXTURE_SCHEMA = 1
DEFAULT_TOLERANCE = 1e-9


class FixtureError(ValueError):
    """Malformed or incomplete fixture data."""


@dataclass(frozen=True)
class ClassData:
    subgroup_class: int
    h: int
    w: int
    reg: float
    unit_gram: tuple[tuple[float, ...], ...]

    @property
    def unit_rank(self) -> int:
        return len(self.unit_gram)


@dataclass(frozen=True)
class FieldFixture:
    label: str
    group: FiniteGroup
    classes: dict[int, ClassData]
    s_orbits: tuple[int, ...]

    def class_data(self, idx: int) -> ClassData:
        if idx not in self.classes:
            raise FixtureError(f"fixture {self.label!r} has no data for subgroup class {idx}")
        return self.classes[idx]


def _float_det(mat: list[list[float]]) -> float:
    n = len(mat)
    if n == 0:
        return 1.0
    m = [list(map(float, row)) for row in mat]
    det = 1.0
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(m[i][k]))
        if m[piv][k] == 0.0:
            return 0.0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def load_fixture(source: str | Path | dict) -> FieldFixture:
    """Parse and validate the versioned fixture schema."""
    if isinstance(source, (str, Path)):
        try:
            obj = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise FixtureError(f"cannot read fixture: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict):
        raise FixtureError("fixture must be a JSON object")
    if obj.get("schema") != FIXTURE_SCHEMA:
        raise FixtureError(f"unsupported fixture schema {obj.get('schema')!r}")
    for key in ("label", "group", "classes", "s_orbits"):
        if key not in obj:
            raise FixtureError(f"fixture is missing {key!r}")
    group = group_from_json(obj["group"])
    lat = subgroup_lattice(group)
    classes: dict[int, ClassData] = {}
    for entry in obj["classes"]:
        try:
            idx = int(entry["subgroup_class"])
            h = int(entry["h"])
            w = int(entry["w"])
            reg = float(entry["reg"])
            gram_rows = [[float(x) for x in row] for row in entry.get("unit_gram", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"bad class entry {entry!r}: {exc}") from exc
        if not 0 <= idx < lat.num_classes:
            raise FixtureError(f"subgroup class {idx} out of range for {group.name}")
        if idx in classes:
            raise FixtureError(f"duplicate class entry {idx}")
        if h < 1 or w < 1:
            raise FixtureError("class number and root-of-unity count must be >= 1")
        if reg <= 0:
            raise FixtureError("regulator must be positive")
        k = len(gram_rows)
        if any(len(row) != k for row in gram_rows):
            raise FixtureError("unit_gram must be square")
        for i in range(k):
            for j in range(i):
                if not math.isclose(gram_rows[i][j], gram_rows[j][i], rel_tol=1e-12, abs_tol=1e-12):
                    raise FixtureError("unit_gram must be symmetric")
        if k and _float_det(gram_rows) <= 0:
            raise FixtureError("unit_gram must have positive determinant")
        classes[idx] = ClassData(idx, h, w, reg, tuple(tuple(r) for r in gram_rows))
    s_orbits = tuple(int(i) for i in obj["s_orbits"])
    for idx in s_orbits:
        if not 0 <= idx < lat.num_classes:
            raise FixtureError(f"s_orbit class {idx} out of range")
    return FieldFixture(str(obj["label"]), group, classes, s_orbits)


def c_units(fixture: FieldFixture, theta: BrauerRelation) -> float:
    """Regulator constant of the S-unit lattice from the fixture Grams:
    prod_H (w_H^-2 det((1/|H|) gram_H))^{n_H}; empty Grams contribute det 1."""
    _check_group(fixture, theta)
    out = 1.0
    for cls_idx, rep, n in theta.support():
        data = fixture.class_data(cls_idx)
        k = data.unit_rank
        scaled = [[x / rep.order for x in row] for row in data.unit_gram]
        factor = _float_det(scaled) / (data.w ** 2)
        out *= factor ** n
    return out


def c_z(fixture: FieldFixture, theta: BrauerRelation) -> Fraction:
    """C_Theta(Z) = prod_H |H|^{-n_H}, exactly."""
    _check_group(fixture, theta)
    out = Fraction(1)
    for _, rep, n in theta.support():
        out *= Fraction(rep.order) ** (-n)
    return out


def c_zs(fixture: FieldFixture, theta: BrauerRelation) -> Fraction:
    """C_Theta(Z[S]) for Z[S] = direct sum over place orbits of Z[G/G_P],
    computed exactly on the permutation module."""
    _check_group(fixture, theta)
    lat = subgroup_lattice(fixture.group)
    if not fixture.s_orbits:
        return Fraction(1)
    mods = [permutation_module(fixture.group, lat.reps[i]) for i in fixture.s_orbits]
    return regulator_constant(theta, direct_sum(*mods))


def _check_group(fixture: FieldFixture, theta: BrauerRelation) -> None:
    if theta.group is not fixture.group:
        raise FixtureError("relation and fixture use different groups")


@dataclass(frozen=True)
class CheckResult:
    name: str
    left: float
    right: float
    tolerance: float
    passed: bool
    abs_err: float
    rel_err: float

    @classmethod
    def compare(cls, name: str, left: float, right: float, tol: float) -> "CheckResult":
        abs_err = abs(left - right)
        scale = max(abs(left), abs(right))
        rel_err = abs_err / scale if scale else 0.0
        return cls(name, left, right, tol, rel_err <= tol, abs_err, rel_err)


@dataclass
class VerificationReport:
    fixture: str
    relation: dict
    tolerance: float
    checks: list[CheckResult] = field(default_factory=list)
    exact: dict[str, str] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "relation": self.relation,
            "tolerance": self.tolerance,
            "all_pass": self.all_pass,
            "checks": [
                {
                    "name": c.name,
                    "left": c.left,
                    "right": c.right,
                    "abs_err": c.abs_err,
                    "rel_err": c.rel_err,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "exact": self.exact,
            "notes": self.notes,
        }


def _h_product(fixture: FieldFixture, theta: BrauerRelation, power: int = 1) -> Fraction:
    out = Fraction(1)
    for cls_idx, _, n in theta.support():
        out *= Fraction(fixture.class_data(cls_idx).h) ** (n * power)
    return out


def _w_product(fixture: FieldFixture, theta: BrauerRelation, power: int = 1) -> Fraction:
    out = Fraction(1)
    for cls_idx, _, n in theta.support():
        out *= Fraction(fixture.class_data(cls_idx).w) ** (n * power)
    return out


def _reg_product(fixture: FieldFixture, theta: BrauerRelation, power: int = 1) -> float:
    out = 1.0
    for cls_idx, _, n in theta.support():
        out *= fixture.class_data(cls_idx).reg ** (n * power)
    return out


def check_bcnf(fixture: FieldFixture, theta: BrauerRelation, tol: float = DEFAULT_TOLERANCE) -> CheckResult:
    """Brauer's class number formula: prod h^{n_H} = prod (w/R)^{n_H}."""
    left = float(_h_product(fixture, theta))
    right = float(_w_product(fixture, theta)) / _reg_product(fixture, theta)
    return CheckResult.compare("bcnf", left, right, tol)


def check_thm_rccln(fixture: FieldFixture, theta: BrauerRelation, tol: float = DEFAULT_TOLERANCE) -> CheckResult:
    """C(E_S) = C(Z[S])^-1 C(Z) prod h^{-2n_H}."""
    left = c_units(fixture, theta)
    right = float(c_zs(fixture, theta) ** -1 * c_z(fixture, theta) * _h_product(fixture, theta, power=-2))
    return CheckResult.compare("rccln", left, right, tol)


def check_thm_rcreg(fixture: FieldFixture, theta: BrauerRelation, tol: float = DEFAULT_TOLERANCE) -> CheckResult:
    """C(E_S) = C(mu) C(Z[S])^-1 C(Z) prod R^{2n_H} with C(mu) = prod w^{-2n_H}."""
    left = c_units(fixture, theta)
    right = (
        float(_w_product(fixture, theta, power=-2) * c_zs(fixture, theta) ** -1 * c_z(fixture, theta))
        * _reg_product(fixture, theta, power=2)
    )
    return CheckResult.compare("rcreg", left, right, tol)


def verify_fixture(
    fixture: FieldFixture,
    theta: BrauerRelation,
    tol: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Run all three checks plus the internal consistency identity
    (bcnf discrepancy)^2 = rccln-ratio / rcreg-ratio."""
    report = VerificationReport(fixture.label, theta.to_json(), tol)
    bcnf = check_bcnf(fixture, theta, tol)
    rccln = check_thm_rccln(fixture, theta, tol)
    rcreg = check_thm_rcreg(fixture, theta, tol)
    report.checks.extend([bcnf, rccln, rcreg])
    report.exact["c_z"] = str(c_z(fixture, theta))
    report.exact["c_zs"] = str(c_zs(fixture, theta))
    report.exact["h_product"] = str(_h_product(fixture, theta))

    # Self-check of the harness: the three identities are algebraically tied by
    # (bcnf left/right)^2 = (rccln left/right)/(rcreg left/right); verify to
    # tolerance^2 with a floor for 64-bit rounding noise.
    disc = (bcnf.left / bcnf.right) ** 2
    ratio = (rccln.left / rccln.right) / (rcreg.left / rcreg.right)
    floor = 64 * sys.float_info.epsilon
    consistency_tol = max(tol * tol, floor)
    consistency = CheckResult.compare("consistency", disc, ratio, consistency_tol)
    report.checks.append(consistency)

    _note_hilbert_q(fixture, report)
    return report


def _note_hilbert_q(fixture: FieldFixture, report: VerificationReport) -> None:
    """For biquadratic fields, report the Hilbert unit index implied by the
    Dirichlet formula h_K = (1/2) Q h1 h2; Q itself is not computed."""
    group = fixture.group
    if group.order != 4:
        return
    lat = subgroup_lattice(group)
    order2 = [i for i, rep in enumerate(lat.reps) if rep.order == 2]
    if len(order2) != 3:
        return
    try:
        top = fixture.class_data(lat.trivial_class())
        quads = [fixture.class_data(i) for i in order2]
    except FixtureError:
        return
    # exclude the Q(i)-layer (the quadratic subfield with w = 4) when present
    others = [q for q in quads if q.w != 4]
    if len(others) != 2:
        return
    implied = Fraction(2 * top.h, others[0].h * others[1].h)
    report.notes["hilbert_q_implied"] = str(implied)
