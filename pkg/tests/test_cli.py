import json
import subprocess
import sys

import jsonschema
import pytest

from surfatlas.cli import cache_path, load_schema, main
from surfatlas.surface import export_schema


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_text(capsys):
    code, out, _ = run(capsys, "census", "S3")
    assert code == 0
    assert out.splitlines()[0] == "S3 - 2 total components, 1 distinct genus values"


def test_census_csv_and_json(capsys):
    code, out, _ = run(capsys, "census", "S4", "--format", "csv")
    assert code == 0
    assert out.startswith("genus,faces,n,lambda1,lambda2,vertices,edges,count\n")
    code, out, _ = run(capsys, "census", "S4", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("census"))
    assert doc["total_components"] == 27


def test_census_abelian_warns(capsys):
    code, out, err = run(capsys, "census", "perm:(1 2)", "--no-cache")
    assert code == 0
    assert "abelian" in err
    assert "0 total components" in out


def test_census_cache_round_trip(capsys):
    code, first, _ = run(capsys, "census", "A4", "--format", "json")
    path = cache_path("A4")
    assert path.exists()
    cached = json.loads(path.read_text())
    assert "timing" in cached and "timing" not in cached["document"]
    code, second, _ = run(capsys, "census", "A4", "--format", "json")
    assert first == second


def test_corrupt_cache_is_ignored(capsys):
    run(capsys, "census", "S3", "--format", "json")
    path = cache_path("S3")
    doc = json.loads(path.read_text())
    doc["document"]["rows"][0]["genus"] = -4
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "census", "S3", "--format", "json")
    assert json.loads(out)["rows"][0]["genus"] == 0


def test_census_figure(tmp_path, capsys):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert run(capsys, "census", "A5", "--figure", str(a))[0] == 0
    assert run(capsys, "census", "A5", "--figure", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_cover_text(capsys):
    code, out, _ = run(capsys, "cover", "S4", "--kernel", "(1 2)(3 4),(1 3)(2 4)")
    assert code == 0
    assert "--(2,1,2) m=8-->" in out
    assert "--(1,2,2) m=4-->" in out


def test_cover_central_json(capsys):
    code, out, _ = run(capsys, "cover", "SL2(3)", "--kernel-center", "--central", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("cover"))
    orders = {lift["monodromy_order"] for b in doc["bases"] for lift in b["lifts"]}
    assert orders == {1, 2}


def test_cover_matrix_kernel(capsys):
    code, out, _ = run(capsys, "cover", "SL2(3)", "--kernel", "[[2,0],[0,2]]")
    assert code == 0
    assert "|N| = 2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("cover", "S4", "--kernel", "(1 2)"),
        ("cover", "S4", "--kernel", "(1 2)(3 4),(1 3)(2 4)", "--central"),
        ("cover", "S4", "--kernel", "(1 9)"),
        ("census", "X9"),
        ("census", "S3", "--format", "xml"),
        ("export", "S3", "--component", "5"),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert main(list(argv)) == 2


def test_actions_text_and_json(capsys):
    code, out, _ = run(capsys, "actions", "PSL2(7)")
    assert code == 0
    assert "(equal)" in out
    code, out, _ = run(capsys, "actions", "ES(3)", "--aut", "--format", "json", "--jobs", "2")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("actions"))
    assert doc["action"] == "automorphism"
    assert {r["Q"] for r in doc["components"]} == {18}


def test_diff_golden(capsys):
    code, out, _ = run(capsys, "diff-golden", "S6")
    assert code == 0
    assert out.strip() == "S6: identical, 4477 total components, 27 distinct genus values"


def test_diff_golden_mismatch(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("genus,faces,n,lambda1,lambda2,vertices,edges,count\n0,2,3,2,2,3,3,2\n")
    code, out, _ = run(capsys, "diff-golden", "S3", str(bad))
    assert code == 1
    assert "mismatched rows" in out


def test_diff_golden_without_table(capsys):
    assert main(["diff-golden", "D8"]) == 2


def test_export(tmp_path, capsys):
    out_path = tmp_path / "c.json"
    assert main(["export", "S3", "--component", "0", "--out", str(out_path)]) == 0
    doc = json.loads(out_path.read_text())
    jsonschema.validate(doc, export_schema())
    assert doc["component_id"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("census", "SL2(5)", "--format", "json"),
        ("cover", "SL2(3)", "--kernel-center", "--central"),
        ("actions", "A5", "--format", "json"),
        ("export", "A4", "--component", "2"),
    ],
)
def test_determinism_in_process(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_determinism_subprocess(tmp_path):
    env_args = [sys.executable, "-m", "surfatlas.cli", "census", "S5", "--no-cache"]
    a = subprocess.run(env_args, capture_output=True, check=True).stdout
    b = subprocess.run(env_args, capture_output=True, check=True).stdout
    assert a == b and a


def test_export_s3_sphere(capsys):
    code, out, _ = run(capsys, "export", "S3", "--component", "0")
    doc = json.loads(out)
    assert len(doc["triangles"]) == 6
    assert doc["invariants"]["lambda"] == [2]


def test_self_diff_of_generated_csv(tmp_path, capsys):
    path = tmp_path / "a6.csv"
    assert main(["census", "A6", "--format", "csv", "--out", str(path)]) == 0
    code, out, _ = run(capsys, "diff-golden", "A6", str(path))
    assert code == 0
    assert "identical, 1335 total components" in out


def test_table_cap_exit_3(monkeypatch, capsys):
    monkeypatch.setenv("ATLAS_TABLE_CAP", "50")
    code, _, err = run(capsys, "census", "A5", "--no-cache")
    assert code == 3
    assert "ATLAS_TABLE_CAP" in err
