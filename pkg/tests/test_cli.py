import json
import os

import pytest

from semigroup_lab.cli import load_spec, main, InputError

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_green_b21_text(capsys):
    code, out, _ = run(capsys, "green", "b21")
    assert code == 0
    assert "D-classes: 3 (sizes 1,4,1)" in out
    assert "DS: false" in out
    assert "LDS: false" in out


def test_green_b21_json_golden(capsys):
    code, out, _ = run(capsys, "green", "b21", "--json")
    assert code == 0
    report = json.loads(out)
    report["timings"]["seconds"] = 0.0
    with open(os.path.join(GOLDEN, "green_b21.json"), encoding="utf-8") as fh:
        assert json.dumps(report, sort_keys=True) + "\n" == fh.read()


def test_check_id_json_golden(capsys):
    code, out, _ = run(capsys, "check-id", "ic:4", "x x x == x x x x",
                       "--json", "--threads", "1")
    assert code == 1
    report = json.loads(out)
    report["timings"]["seconds"] = 0.0
    with open(os.path.join(GOLDEN, "check_id_ic4.json"), encoding="utf-8") as fh:
        assert json.dumps(report, sort_keys=True) + "\n" == fh.read()


def test_check_id_exit_codes(capsys):
    code, out, _ = run(capsys, "check-id", "ic:4", "x x x x == x x x x x")
    assert code == 0
    code, out, _ = run(capsys, "check-id", "ic:4", "x y == y x")
    assert code == 1
    assert "witness" in out
    code, _, err = run(capsys, "check-id", "ic:4", "x y z w == w z y x",
                       "--budget", "1000")
    assert code == 2
    assert "search too large" in err


def test_isoterm_exit_codes(capsys):
    code, out, _ = run(capsys, "isoterm", "ic:4", "x y x", "--max-len", "5")
    assert code == 0
    assert "bounded check only" in out
    code, out, _ = run(capsys, "isoterm", "ic:4", "x x x x", "--max-len", "5")
    assert code == 1
    assert "x x x x x" in out


def test_info_smoke(capsys):
    code, out, _ = run(capsys, "info", "ic:4")
    assert code == 0
    assert "order: 42" in out
    assert "uniform idempotent power k: 4" in out
    assert "subgroup exponent lcm m: 1" in out


def test_embed_ic4(capsys):
    code, out, _ = run(capsys, "embed-ic4", "--check")
    assert code == 0
    assert "verified over 1764 pairs" in out
    assert "row-monomial" in out
    assert "injective" in out


def test_divisor_found_and_inconclusive(capsys):
    code, out, _ = run(capsys, "divisor", "b21", "--target", "b2",
                       "--max-gens", "2")
    assert code == 0
    assert "divides" in out
    code, out, _ = run(capsys, "divisor", "semilattice:3", "--target", "b2",
                       "--max-gens", "3")
    assert code == 2
    assert "bounded search" in out


def test_nfb_gen_then_verify_certificate(capsys, tmp_path):
    cert = tmp_path / "n2.cert"
    code, out, _ = run(capsys, "nfb", "gen", "--n", "2", "--k", "1",
                       "--m", "1", "--out", str(cert))
    assert code == 0
    assert cert.exists()
    code, out, _ = run(capsys, "nfb", "verify", "semilattice:2",
                       "--cert", str(cert))
    assert code == 0
    assert "holds" in out


def test_nfb_gen_stdout_contains_certificate(capsys):
    code, out, _ = run(capsys, "nfb", "gen", "--n", "1", "--k", "1", "--m", "1")
    assert code == 0
    assert out.startswith("nfb-certificate v1")
    assert "P0 pass, P1 pass, P2 pass" in out


def test_nfb_verify_builds_parameters_from_power_data(capsys):
    code, out, _ = run(capsys, "nfb", "verify", "cyclic:2", "--n", "2")
    assert code == 0
    assert "k=2 m=2" in out


def test_nfb_verify_mismatched_certificate(capsys, tmp_path):
    cert = tmp_path / "bad.cert"
    code, _, _ = run(capsys, "nfb", "gen", "--n", "1", "--k", "1", "--m", "1",
                     "--out", str(cert))
    text = cert.read_text()
    cert.write_text(text.replace("n = 1", "n = 3"))
    code, _, err = run(capsys, "nfb", "verify", "semilattice:2",
                       "--cert", str(cert))
    assert code == 3


def test_load_spec_builtins():
    assert len(load_spec("ic:3")) == 14
    with pytest.raises(InputError):
        load_spec("no:such:thing")


def test_spec_file_partial_transformations(tmp_path, capsys):
    spec = tmp_path / "shift.json"
    spec.write_text(json.dumps({
        "kind": "partial_transformations",
        "degree": 4,
        "generators": [[2, 3, 4, None]],
    }))
    s = load_spec(str(spec))
    assert len(s) == 4  # the shift, its square and cube, the empty map
    code, out, _ = run(capsys, "info", str(spec))
    assert code == 0
    assert "order: 4" in out


def test_spec_file_matrices(tmp_path):
    spec = tmp_path / "units.json"
    spec.write_text(json.dumps({
        "kind": "matrices_gf2",
        "generators": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]],
    }))
    s = load_spec(str(spec))
    assert len(s) == 5


def test_spec_file_cayley_left_zero(tmp_path):
    spec = tmp_path / "lz.json"
    spec.write_text(json.dumps({
        "kind": "cayley",
        "labels": ["p", "q"],
        "table": [[0, 0], [1, 1]],
    }))
    s = load_spec(str(spec))
    assert len(s) == 2
    assert s.identity is None


def test_spec_file_bad_json_position(tmp_path, capsys):
    spec = tmp_path / "broken.json"
    spec.write_text('{"kind": "cayley",\n  "labels": [,]\n}')
    code, _, err = run(capsys, "green", str(spec))
    assert code == 3
    assert "broken.json:2" in err


def test_spec_file_not_associative(tmp_path, capsys):
    spec = tmp_path / "sub.json"
    table = [[(i - j) % 3 for j in range(3)] for i in range(3)]
    spec.write_text(json.dumps({
        "kind": "cayley", "labels": ["a", "b", "c"], "table": table}))
    code, _, err = run(capsys, "green", str(spec))
    assert code == 3
    assert "not a semigroup" in err


def test_element_cap_env(tmp_path, capsys, monkeypatch):
    spec = tmp_path / "shift.json"
    spec.write_text(json.dumps({
        "kind": "partial_transformations",
        "degree": 4,
        "generators": [[2, 3, 4, None]],
    }))
    monkeypatch.setenv("SEMIGROUP_LAB_CAP", "2")
    code, _, err = run(capsys, "info", str(spec))
    assert code == 3
    assert "closure overflow" in err


def test_no_command_prints_help(capsys):
    code, out, _ = run(capsys)
    assert code == 3
    assert "usage" in out.lower()
