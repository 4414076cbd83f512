"""Fixture generation: drive the CAS in a subprocess, query the verifier's
group catalog through its CLI, align the Galois group with the named preset
and emit the versioned fixture schema."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .groupmatch import MatchError, classify_subgroup, isomorphisms


class GenerationError(RuntimeError):
    pass


class CasNotFound(GenerationError):
    pass


@dataclass
class FieldRequest:
    poly: str
    group: str
    precision: int = 30
    cas_python: str | None = None  # interpreter used to run the CAS subprocess


def run_cas(request: FieldRequest) -> dict:
    """Execute the CAS job in a subprocess and return its result."""
    interpreter = request.cas_python or sys.executable
    if shutil.which(interpreter) is None and not Path(interpreter).exists():
        raise CasNotFound(f"CAS not found: no interpreter at {interpreter!r}")
    with tempfile.TemporaryDirectory(prefix="fixturegen-") as tmp:
        job_path = Path(tmp) / "job.json"
        out_path = Path(tmp) / "result.json"
        job_path.write_text(json.dumps({
            "poly": request.poly,
            "precision": request.precision,
        }))
        proc = subprocess.run(
            [interpreter, "-m", "fixturegen.minicas", str(job_path), str(out_path)],
            capture_output=True, text=True,
        )
        if proc.returncode != 0:
            raise GenerationError(
                f"CAS failed (exit {proc.returncode}): {proc.stderr.strip()}"
            )
        return json.loads(out_path.read_text())


def _verifier_cli() -> list[str]:
    exe = shutil.which("brauerreg")
    if exe:
        return [exe]
    return [sys.executable, "-m", "brauerreg.cli"]


def group_info(preset: str) -> dict:
    proc = subprocess.run(
        _verifier_cli() + ["group-info", "--group", preset],
        capture_output=True, text=True,
    )
    if proc.returncode != 0:
        raise GenerationError(f"verifier group-info failed: {proc.stderr.strip()}")
    return json.loads(proc.stdout)


def verify_fixture_file(path: str | Path, tolerance: float) -> dict:
    proc = subprocess.run(
        _verifier_cli() + [
            "verify", "--fixture", str(path), "--all-relations",
            "--tolerance", str(tolerance),
        ],
        capture_output=True, text=True,
    )
    if proc.returncode == 2:
        raise GenerationError(f"verifier rejected the fixture: {proc.stderr.strip()}")
    out = json.loads(proc.stdout)
    out["exit_code"] = proc.returncode
    return out


def _assemble(cas: dict, info: dict, iso, label: str) -> dict:
    """Build the fixture JSON for one isomorphism CAS-group -> preset."""
    table = info["table"]
    reps = [c["representative"] for c in info["classes"]]
    class_entries: dict[int, dict] = {}
    for entry in cas["classes"]:
        mapped = [iso[e] for e in entry["rep"]]
        target = classify_subgroup(table, reps, mapped)
        if target in class_entries:
            raise MatchError("two CAS classes mapped to the same preset class")
        class_entries[target] = {
            "subgroup_class": target,
            "h": entry["h"],
            "w": entry["w"],
            "reg": entry["reg"],
            "unit_gram": entry["unit_gram"],
        }
    if len(class_entries) != len(info["classes"]):
        raise MatchError("class matching is not a bijection")
    s_orbits = sorted(
        classify_subgroup(table, reps, [iso[e] for e in _class_rep(cas, idx)])
        for idx in cas["s_orbits"]
    )
    return {
        "schema": 1,
        "label": label,
        "group": {"preset": info["name"]},
        "classes": [class_entries[i] for i in sorted(class_entries)],
        "s_orbits": s_orbits,
        "notes": {
            "generated_by": "fixture-gen",
            "poly": cas["poly"],
            "field_disc": str(cas["disc"]),
        },
    }


def _class_rep(cas: dict, idx: int) -> list[int]:
    return cas["classes"][idx]["rep"]


def generate(request: FieldRequest, existing: dict | None = None) -> dict:
    """Produce a fixture; with `existing`, pick the group alignment that
    matches its exact fields (for regeneration diffs)."""
    cas = run_cas(request)
    info = group_info(request.group)
    if len(info["table"]) != cas["degree"]:
        raise GenerationError(
            f"polynomial gives a Galois group of order {cas['degree']}, "
            f"but preset {request.group} has order {len(info['table'])}"
        )
    label = f"{request.poly}, G = {request.group}, S = archimedean"
    candidates = []
    for iso in isomorphisms(cas["table"], info["table"]):
        try:
            fixture = _assemble(cas, info, iso, label)
        except MatchError:
            continue
        if existing is None:
            return fixture
        candidates.append(fixture)
        if not _exact_diffs(existing, fixture):
            return fixture
    if not candidates:
        raise GenerationError(
            f"Galois group is not isomorphic to preset {request.group} "
            "(or no consistent class matching exists)"
        )
    return candidates[0]


def _exact_diffs(old: dict, new: dict) -> list[str]:
    diffs = []
    if old.get("group") != new.get("group"):
        diffs.append("group")
    if list(old.get("s_orbits", [])) != list(new.get("s_orbits", [])):
        diffs.append("s_orbits")
    old_classes = {c["subgroup_class"]: c for c in old.get("classes", [])}
    new_classes = {c["subgroup_class"]: c for c in new.get("classes", [])}
    if sorted(old_classes) != sorted(new_classes):
        diffs.append("classes")
        return diffs
    for idx in sorted(old_classes):
        for key in ("h", "w"):
            if old_classes[idx][key] != new_classes[idx][key]:
                diffs.append(f"classes[{idx}].{key}")
    return diffs


def _numeric_diffs(old: dict, new: dict, rel_tol: float) -> list[str]:
    diffs = []
    old_classes = {c["subgroup_class"]: c for c in old.get("classes", [])}
    new_classes = {c["subgroup_class"]: c for c in new.get("classes", [])}
    for idx in sorted(old_classes):
        o, n = old_classes[idx], new_classes[idx]
        if not _close(o["reg"], n["reg"], rel_tol):
            diffs.append(f"classes[{idx}].reg")
        og, ng = o.get("unit_gram", []), n.get("unit_gram", [])
        if len(og) != len(ng):
            diffs.append(f"classes[{idx}].unit_gram.shape")
            continue
        for i, (orow, nrow) in enumerate(zip(og, ng)):
            for j, (a, b) in enumerate(zip(orow, nrow)):
                if not _close(a, b, rel_tol):
                    diffs.append(f"classes[{idx}].unit_gram[{i}][{j}]")
    return diffs


def _close(a, b, rel_tol: float) -> bool:
    fa, fb = float(a), float(b)
    scale = max(abs(fa), abs(fb), 1e-300)
    return abs(fa - fb) / scale <= rel_tol


def regenerate_check(existing_path: str | Path, request: FieldRequest,
                     rel_tol: float = 1e-12) -> dict:
    """Recompute the fixture and diff it against an existing file: exact
    fields bitwise, numeric fields at the given relative tolerance."""
    existing = json.loads(Path(existing_path).read_text())
    fresh = generate(request, existing=existing)
    diffs = _exact_diffs(existing, fresh) + _numeric_diffs(existing, fresh, rel_tol)
    return {
        "existing": str(existing_path),
        "rel_tol": rel_tol,
        "diffs": diffs,
        "match": not diffs,
        "regenerated": fresh,
    }
