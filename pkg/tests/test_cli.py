import json
import subprocess
import sys

import numpy as np
import pytest

from dgsemi.cli import export_document, load_definitions, main, parse_pairs
from dgsemi.dg import validate_dg_algebra, validate_dg_module


def _catalog_file(tmp_path, name, field=None):
    out = tmp_path / f"{name}.json"
    argv = ["catalog", name, str(out)] + (["--field", field] if field else [])
    assert main(argv) == 0
    return out


@pytest.mark.parametrize("name", ["k", "T2", "T3", "S3", "K"])
def test_catalog_round_trip(tmp_path, catalog, name):
    path = _catalog_file(tmp_path, name)
    defs = load_definitions(path)
    e = catalog[name]
    a = defs.algebra()
    assert np.array_equal(a.mult, e.algebra.mult)
    assert np.array_equal(a.diff_total, e.algebra.diff_total)
    for role, m in e.modules.items():
        assert np.array_equal(defs.module(role, a).total_action(), m.total_action())
    # export of the loaded objects reproduces the file
    roles = {}
    for (_, r), n in defs.roles.items():
        roles.setdefault(id(defs.modules[n]), []).append(r)
    assert export_document([a, *defs.modules.values()], roles) == json.loads(path.read_text())
    assert main(["validate", str(path)]) == 0


def test_rational_catalog_export(tmp_path):
    path = _catalog_file(tmp_path, "S3", "QQ")
    assert json.loads(path.read_text())["field"] == "QQ"
    assert main(["validate", str(path)]) == 0


def test_exit_codes_for_verdicts(tmp_path, capsys):
    t2 = _catalog_file(tmp_path, "T2")
    s3 = _catalog_file(tmp_path, "S3")
    assert main(["semidualizing", str(t2), f"{t2}#R", "--degree-bound", "6"]) == 0
    report = tmp_path / "k.json"
    assert main(["semidualizing", str(t2), f"{t2}#k", "--degree-bound", "6", "--report", str(report)]) == 1
    doc = json.loads(report.read_text())
    assert doc["format"] == "dgsemi-report" and doc["records"][0]["verdict"] == "fails"
    assert doc["records"][0]["anchor"]
    # at bound 0 the ladder is too short to certify the homothety window
    assert main(["semidualizing", str(s3), f"{s3}#omega", "--degree-bound", "0"]) == 3


def test_corrupted_leibniz_is_rejected(tmp_path, capsys):
    path = _catalog_file(tmp_path, "K")
    doc = json.loads(path.read_text())
    # ∂(x e) = x·∂e = x² = 0; declaring ∂(x e) = x breaks the Leibniz rule
    doc["objects"][0]["differential"].append([3, 1, "1"])
    path.write_text(json.dumps(doc))
    assert main(["validate", str(path)]) == 1
    assert "leibniz" in capsys.readouterr().err
    assert main(["semidualizing", str(path), f"{path}#R", "--degree-bound", "2"]) == 1


@pytest.mark.parametrize("mutate", [
    lambda d: d["objects"][0]["multiplication"].__setitem__(0, [0, 0, 0, "1.5"]),
    lambda d: d["objects"][0].__setitem__("degrees", [0, 1, 0]),
    lambda d: d.__setitem__("format", "something-else"),
    lambda d: d.__setitem__("field", "GF(100)"),
    lambda d: d["objects"][1].__setitem__("algebra", "missing"),
])
def test_malformed_input_exit_2(tmp_path, mutate):
    path = _catalog_file(tmp_path, "S3")
    doc = json.loads(path.read_text())
    mutate(doc)
    path.write_text(json.dumps(doc))
    assert main(["validate", str(path)]) == 2


def test_missing_file_exit_2(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2


def test_tensor_command(tmp_path):
    k = _catalog_file(tmp_path, "K")
    out = tmp_path / "KK.json"
    assert main(["tensor", str(k), str(k), str(out)]) == 0
    defs = load_definitions(out)
    algebras = list(defs.algebras.values())
    big = max(algebras, key=lambda a: a.dim)
    assert big.complex.dims == {0: 4, 1: 8, 2: 4}
    assert validate_dg_algebra(big).holds
    assert all(validate_dg_module(m).holds for m in defs.modules.values())
    assert main(["validate", str(out)]) == 0


def test_tensor_field_mismatch(tmp_path):
    a = _catalog_file(tmp_path, "T2")
    b = tmp_path / "q.json"
    assert main(["catalog", "T2", str(b), "--field", "QQ"]) == 0
    assert main(["tensor", str(a), str(b), str(tmp_path / "x.json")]) == 1


def test_suite_command(tmp_path):
    t2 = _catalog_file(tmp_path, "T2")
    report = tmp_path / "suite.json"
    assert main(["suite", "--algebras", str(t2), str(t2), "--pairs", "R:R,k:R", "--degree-bound", "4",
                 "--report", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert doc["records"] and all(r["verdict"] == "holds" for r in doc["records"])
    assert main(["suite", "--algebras", str(t2), str(t2), "--pairs", "", "--degree-bound", "4"]) == 0


def test_parse_pairs():
    assert parse_pairs("R:omega,k:R") == [("R", "omega"), ("k", "R")]
    assert sorted(parse_pairs("{R,omega}^2")) == sorted([("R", "R"), ("R", "omega"), ("omega", "R"),
                                                         ("omega", "omega")])
    assert parse_pairs("") == []


def test_console_entry_point(tmp_path):
    out = tmp_path / "k.json"
    r = subprocess.run([sys.executable, "-m", "dgsemi.cli", "catalog", "k", str(out)], capture_output=True)
    assert r.returncode == 0 and out.exists()
