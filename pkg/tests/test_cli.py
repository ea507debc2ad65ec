import json
import shutil
import subprocess

import pytest

from braidties.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bell(capsys):
    code, out, err = run(capsys, "bell", "A4")
    assert code == 0
    assert out.split("\n")[:3] == ["Bell(A4) = 52", "|W| = 120", "Bell(W)|W| = 6240"]
    assert "time bell" in err


def test_bell_json(capsys):
    code, out, _ = run(capsys, "bell", "B3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"system": "B3", "bell": 38, "order": 48, "product": 1824}


def test_bell_rejects_affine(capsys):
    code, _, err = run(capsys, "bell", "~A2")
    assert code == 2 and "infinite" in err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_multiply_hecke(capsys):
    code, out, _ = run(capsys, "multiply", "Hecke(A2)", "g1", "g1")
    assert code == 0 and out.strip() == "u + (1-u) g1"
    assert run(capsys, "multiply", "hecke:A2", "g1", "g1^-1")[1].strip() == "1"


def test_multiply_cw(capsys):
    code, out, _ = run(capsys, "multiply", "A2", "g1", "g1")
    assert code == 0 and out.strip() == "1+(-1+u)*e<a1> + ((1-u)*e<a1>) g1"


def test_hecke_image(capsys):
    code, out, _ = run(capsys, "hecke-image", "A2", "e1 g1 g2")
    assert code == 0 and out.strip() == "g1 g2"


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "typeB:3")
    assert code == 0 and "dimension = 720" in out


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "typeA", "3")
    assert code == 0 and "relations hold" in out


def test_verify_corrupted(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("(bad) g1 g2 = g2 g1\n")
    code, out, _ = run(capsys, "verify", "typeA", "3", "--relations", str(f))
    assert code == 1
    assert "FAIL (bad) g1 g2 = g2 g1" in out


def test_verify_json_is_deterministic(capsys):
    a = run(capsys, "verify", "typeB", "2", "--format", "json", "--threads", "1")[1]
    b = run(capsys, "verify", "typeB", "2", "--format", "json", "--threads", "4")[1]
    assert a == b
    assert json.loads(a)["ok"] is True


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDTIES_THREADS", "3")
    assert run(capsys, "verify", "doubled", "G2")[0] == 0
    monkeypatch.setenv("BRAIDTIES_THREADS", "many")
    assert run(capsys, "verify", "doubled", "G2")[0] == 2


@pytest.mark.parametrize("name,n", [("B-to-A", "3"), ("Chat-to-C", "3"), ("Chat-to-A", "3")])
def test_check_juyumaya_catalog(capsys, name, n):
    code, out, _ = run(capsys, "check-juyumaya", name, n, "--bound", "4")
    assert code == 0
    assert "FAIL" not in out


def test_check_juyumaya_triple_mode(capsys):
    assert run(capsys, "check-juyumaya", "D-to-A", "4", "--mode", "triple")[0] == 0


def test_bad_map_file(capsys, tmp_path):
    f = tmp_path / "map.json"
    f.write_text(json.dumps({"source": "A2", "target": "A1", "phi": {"s1": "s1", "s2": ""}}))
    code, out, _ = run(capsys, "check-juyumaya", "--map", str(f))
    assert code == 1
    assert "(s1 s2)^3 = 1" in out


def test_custom_map_file(capsys, tmp_path):
    f = tmp_path / "map.json"
    f.write_text(json.dumps({"source": "B2", "target": "A2", "phi": {"s1": "", "s2": "s1"},
                             "t": {"s1": "s1"}}))
    code, out, _ = run(capsys, "check-juyumaya", "--map", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["ok"]


def test_config_file(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"format": "json"}))
    code, out, _ = run(capsys, "bell", "A3", "--config", str(good))
    assert code == 0 and json.loads(out)["bell"] == 15
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "red"}))
    code, _, err = run(capsys, "bell", "A3", "--config", str(bad))
    assert code == 2 and "colour" in err


def test_centralizer(capsys):
    code, out, _ = run(capsys, "centralizer", "B3", "s1")
    assert code == 0 and "|C_W(s1)| = 16" in out


def test_export_presentation(capsys):
    code, out, _ = run(capsys, "export-presentation", "typeD", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["system"] == "D4"
    assert any(r["tag"] == "D8" for r in data["relations"])


@pytest.mark.skipif(shutil.which("braidties") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["braidties", "bell", "A2"], capture_output=True, text=True)
    assert res.returncode == 0 and "Bell(A2) = 5" in res.stdout
