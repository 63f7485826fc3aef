import json

import pytest

from cycibl.cli import main
from cycibl import fileio
from cycibl.models import build_sn


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_model_emit_and_check(tmp_path, capsys):
    path = tmp_path / "s3.json"
    code, out, _ = run(capsys, "model", "sn", "--n", "3",
                       "--output", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["manifold_dimension"] == 3
    code, out, _ = run(capsys, "algebra-check", str(path))
    assert code == 0
    assert "all relations hold" in out


def test_algebra_check_fails_on_broken_pairing(tmp_path, capsys):
    doc = fileio.structure_to_dict(build_sn(3).structure)
    doc["pairing"][0][1] = "2"   # breaks antisymmetry against the (1,0) entry
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "algebra-check", str(path))
    assert code == 1
    assert "antisymmetry" in out or "relation" in out


def test_empty_basis_is_input_error(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"name": "x", "manifold_dimension": 2,
                                "basis": [], "mu": {}}))
    code, _, err = run(capsys, "algebra-check", str(path))
    assert code == 2
    assert "basis" in err


def test_homology_table_and_records(tmp_path, capsys):
    path = tmp_path / "s2.json"
    run(capsys, "model", "sn", "--n", "2", "--output", str(path))
    code, out, _ = run(capsys, "homology", str(path), "--twist", "mc",
                       "--reduced", "--weight-bound", "6")
    assert code == 0
    assert "stable" in out
    rec1 = tmp_path / "a.json"
    rec2 = tmp_path / "b.json"
    run(capsys, "homology", str(path), "--twist", "mc", "--reduced",
        "--weight-bound", "6", "--format", "records", "--output", str(rec1))
    run(capsys, "homology", str(path), "--twist", "mc", "--reduced",
        "--weight-bound", "6", "--format", "records", "--output", str(rec2))
    assert rec1.read_bytes() == rec2.read_bytes()
    rows = json.loads(rec1.read_text())
    stable = {(r["degree"], r["weight"]) for r in rows
              if r["stable"] and r["dim"]}
    assert stable == {(w, w) for w in (1, 3, 5)}


def test_weight_bound_one(tmp_path, capsys):
    path = tmp_path / "s3.json"
    run(capsys, "model", "sn", "--n", "3", "--output", str(path))
    code, out, _ = run(capsys, "homology", str(path), "--twist", "mc",
                       "--weight-bound", "1", "--format", "records")
    assert code == 0
    rows = json.loads(out)
    assert all(r["weight"] == 1 for r in rows)
    assert not any(r["stable"] for r in rows)


def test_graphs_listing(capsys):
    code, out, _ = run(capsys, "graphs", "2", "1", "0", "--legs", "3")
    assert code == 0
    assert "classes" in out
    # (1,4) and (2,3): automorphism orders 1 and 1
    code, out, _ = run(capsys, "graphs", "2", "1", "0", "--legs", "2",
                       "--format", "records")
    rows = json.loads(out)
    auts = sorted(r["automorphisms"] for r in rows)
    assert auts == [1, 2]


def test_pushforward_zero_kernel(tmp_path, capsys):
    path = tmp_path / "s3.json"
    run(capsys, "model", "sn", "--n", "3", "--output", str(path))
    code, out, _ = run(capsys, "pushforward", str(path),
                       "--weight-bound", "4")
    assert code == 0
    doc = json.loads(out)
    entry10 = next(e for e in doc["entries"] if (e["l"], e["g"]) == (1, 0))
    assert entry10["cochain"]["values"]
    for e in doc["entries"]:
        if (e["l"], e["g"]) != (1, 0):
            assert not e["cochain"]["values"]


def test_green_pipeline_on_model_file(tmp_path, capsys):
    path = tmp_path / "cp2.json"
    run(capsys, "model", "cpn", "--n", "2", "--output", str(path))
    code, out, _ = run(capsys, "green", str(path))
    assert code == 0
    doc = json.loads(out)
    assert all(doc["properties"].values())


def test_eval_product_relation(tmp_path, capsys):
    s3 = tmp_path / "s3.json"
    run(capsys, "model", "sn", "--n", "3", "--output", str(s3))
    one = tmp_path / "one.json"
    one.write_text(json.dumps(
        {"arity": 1, "values": [{"tuple": [["1"]], "coefficient": "1"}]}))
    w3 = tmp_path / "w3.json"
    w3.write_text(json.dumps(
        {"arity": 1, "values": [{"tuple": [["w", "w", "w"]], "coefficient": "1"}]}))
    code, out, _ = run(capsys, "eval", "product", "--algebra", str(s3),
                       "--psi", str(one), "--psi2", str(w3))
    assert code == 0
    doc = json.loads(out)
    assert doc["values"] == [
        {"tuple": [["w", "w"]], "coefficient": "-2"}]


def test_byte_stable_structured_output(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "model", "cpn", "--n", "2", "--output", str(a))
    run(capsys, "model", "cpn", "--n", "2", "--output", str(b))
    assert a.read_bytes() == b.read_bytes()
