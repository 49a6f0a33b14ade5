import json
import subprocess
import sys

import pytest

from simplex_lab.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


def test_volume_regular(capsys, write):
    code, out, _ = call(capsys, "volume", "--edges", write(["1"] * 10), "--oracle")
    assert code == 0 and out["W"] == "5/9216" and out["W_gram"] == "5/9216"


def test_volume_vector_object(capsys, write):
    path = write({"n": 3, "ring": "rational", "entries": ["1"] * 6})
    code, out, _ = call(capsys, "volume", "--edges", path)
    assert code == 0 and out["W"] == "1/72"


def test_volume_dimension_mismatch(capsys, write):
    code, _, err = call(capsys, "volume", "--n", "5", "--edges", write(["1"] * 10))
    assert code == 2 and "n = 5" in err


def test_malformed_json(capsys, write):
    code, out, err = call(capsys, "volume", "--edges", write('["1", '))
    assert code == 2 and out is None and ":1:" in err


def test_missing_file(capsys):
    code, _, err = call(capsys, "volume", "--edges", "/nonexistent/x.json")
    assert code == 2


def test_areas(capsys, write):
    code, out, _ = call(capsys, "areas", "--edges", write(["1"] * 6))
    assert code == 0 and out["entries"] == ["3/16"] * 4


def test_catalog_verify(capsys):
    code, out, _ = call(capsys, "catalog", "--n", "4", "--verify")
    assert code == 0 and out["count"] == 64 and out["fiber_ok"] and out["volume_table_ok"]
    assert out["volume_table"]["pairing:0-1:+1"] == "-1/3072"


def test_catalog_unsupported(capsys):
    code, _, _ = call(capsys, "catalog", "--n", "3")
    assert code == 2


def test_jacobian_rank(capsys):
    code, out, _ = call(capsys, "jacobian", "--n", "5", "--point", "pairing:0-1:-1", "--rank")
    assert code == 0 and out["full_column_rank"] and out["rank"] == 15


def test_images_pair(capsys):
    code, out, _ = call(capsys, "images", "--n", "5", "--first", "pairing:0-1:+1", "--second", "pairing:0-1:-1")
    assert code == 0 and out["images_equal"] is True
    code, out, _ = call(capsys, "images", "--n", "5", "--first", "pairing:0-1:+1", "--second", "pairing:2-3:+1")
    assert out["images_equal"] is False


def test_images_needs_arguments(capsys):
    assert call(capsys, "images", "--n", "5")[0] == 2


def test_curve_odd(capsys):
    code, out, _ = call(capsys, "curve", "--family", "odd", "--q", "3", "--verify")
    assert code == 0 and out["verification"]["ok"]
    assert out["W"] == {"1": "1/230400"}


def test_curve_n5_with_witness(capsys):
    code, out, _ = call(capsys, "curve", "--family", "n5", "--a", "2", "--b", "1", "--c", "3", "--verify", "--witness", "PD")
    assert code == 0 and out["verification"]["ok"] and out["witness_certificate"]["ok"]


def test_curve_trivial_witness_fails(capsys):
    code, out, _ = call(capsys, "curve", "--family", "n4", "--witness", "1")
    assert code == 1 and not out["witness_certificate"]["ok"]


def test_curve_bad_params(capsys):
    assert call(capsys, "curve", "--family", "n5", "--a", "1", "--b", "-1")[0] == 2


def test_witness(capsys, write):
    code, out, _ = call(capsys, "witness", "--kind", "P", "--areas", write(["1"] * 20))
    assert code == 0 and out["value"] == "1"


def test_fiber(capsys, write, tmp_path):
    out_path = tmp_path / "fiber.json"
    target = write(["3/16"] * 9 + ["0.19"])
    code, _, _ = call(capsys, "fiber", "--target", target, "--out", str(out_path))
    report = json.loads(out_path.read_text())
    assert code == 0 and report["endpoint_count"] == 64 and report["path_failures"] == 0


def test_fiber_wrong_n(capsys, write):
    assert call(capsys, "fiber", "--n", "5", "--target", write(["1"] * 20))[0] == 2


def test_probe(capsys):
    code, out, _ = call(capsys, "probe", "--trials", "20", "--seed", "2")
    assert code == 0 and out["ok"] and out["buckets"]["other"] == 0


def test_all_checks_subset(capsys):
    code, out, err = call(capsys, "all-checks", "--only", "AC1", "AC2")
    assert code == 0 and out["schema"] == "simplex-lab.report/1"
    statuses = {c["id"].split("-")[0]: c["status"] for c in out["checks"]}
    assert statuses["AC1"] == statuses["AC2"] == "pass"
    assert "AC1" in err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "simplex_lab", "volume"], capture_output=True)
    assert proc.returncode == 2


def test_all_checks_unknown_id(capsys):
    assert call(capsys, "all-checks", "--only", "AC99")[0] == 2
