import json
import subprocess
import sys

import pytest

from aowf.cli import run_command
from aowf.core import pair_encode as P


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_check_sigma_assoc_passes(capsys):
    code, rep = run(capsys, "check", "--fn", "sigma", "--relation", "mock", "--max-len", "3",
                    "--prop", "assoc")
    assert code == 0 and rep["verdict"] == "pass" and rep["violation_count"] == "0"


def test_counterexample_command(capsys):
    code, ce = run(capsys, "counterexample", "--relation", "mock")
    assert code == 0
    assert ce["left"] == ce["trashbin"] != ce["right"] == P(ce["x0"], ce["x0"])
    code, ce = run(capsys, "counterexample", "--relation", "mock", "--x0", "1")
    assert code == 0 and ce["right"] == P("1", "1")


def test_tau_total_weak_assoc_fails(capsys):
    code, rep = run(capsys, "check", "--fn", "tau-total", "--relation", "mock", "--prop", "weak-assoc")
    assert code == 1 and rep["verdict"] == "fail"


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["check", "--prop", "bogus"],
    ["check", "--fn", "sigma"],
    ["bound", "--m", "0", "--x", "4"],
    ["check", "--prop", "assoc", "--limit", "0"],
    ["check", "--prop", "assoc", "--max-triples", "10"],
    ["agreek", "--k", "1"],
    ["check", "--prop", "assoc", "--seed", "-3"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run_command(argv) == 2


def test_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("AOWF_SEED", "xyz")
    assert run_command(["gen"]) == 2


def test_env_seed_fallback(monkeypatch, capsys):
    _, explicit = run(capsys, "gen", "--seed", "17", "--items", "5", "--want", "2")
    monkeypatch.setenv("AOWF_SEED", "17")
    _, via_env = run(capsys, "gen", "--items", "5", "--want", "2")
    assert explicit == via_env
    _, flag_wins = run(capsys, "gen", "--seed", "18", "--items", "5", "--want", "2")
    assert flag_wins != via_env


def test_gen_instance_roundtrip(tmp_path, capsys):
    path = tmp_path / "inst.json"
    assert run_command(["gen", "--seed", "4", "--items", "6", "--want", "3", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    assert all(isinstance(v, str) for v in data["items"]) and isinstance(data["target"], str)
    code, rep = run(capsys, "check", "--relation", "subset-sum", "--instance", str(path),
                    "--prop", "comm")
    assert code == 0 and rep["verdict"] == "pass"


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run_command(["agree2", "--fn", "sigma-total", "--sessions", "5", "--seed", "2",
                            "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().endswith("\n")


def test_sign_then_verify(tmp_path, capsys):
    path = tmp_path / "sig.json"
    assert run_command(["sign", "--fn", "sigma-total", "--seed", "5", "--out", str(path)]) == 0
    code, res = run(capsys, "verifysig", "--in", str(path))
    assert code == 0 and res["valid"] is True
    data = json.loads(path.read_text())
    data["signature"] = P("0", "00")
    path.write_text(json.dumps(data))
    code, res = run(capsys, "verifysig", "--in", str(path))
    assert code == 1 and res["valid"] is False
    assert run_command(["verifysig", "--in", str(tmp_path / "missing.json")]) == 2


def test_other_commands(capsys):
    code, res = run(capsys, "bound", "--m", "2", "--x", "4")
    assert code == 0 and res["value"] == "256"
    code, res = run(capsys, "homan", "--fn", "lexmax", "--n", "5")
    assert code == 0 and res["z"] == "1" and res["count"] == "5" and res["verified"]
    code, res = run(capsys, "census", "--fn", "concat", "--universe", "exhaustive", "--max-len", "2")
    assert code == 0 and res["counts"]["01"] == "3"
    code, res = run(capsys, "invert", "--fn", "concat", "--known", "0", "--target", "01", "--bound", "64")
    assert code == 0 and res["found"] == "1"
    code, res = run(capsys, "invert", "--fn", "concat", "--known", "1", "--target", "01", "--bound", "64")
    assert code == 1 and res["found"] is None
    code, res = run(capsys, "reduce", "--relation", "mock", "--max-len", "3")
    assert code == 0 and res["agree"] == res["inputs"] == "15"
    code, res = run(capsys, "agreek", "--fn", "sigma-total", "--k", "4", "--sessions", "5")
    assert code == 0 and res["agreed"] == "5"
    code, res = run(capsys, "attack", "--fn", "sigma-total", "--sessions", "4")
    assert code == 0 and res["combination_successes"] == "4"
    assert all("secrets" not in t for t in res["transcripts"])
    code, res = run(capsys, "check", "--fn", "sigma", "--prop", "total")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "aowf", "bound", "--m", "1", "--x", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "4"
    proc = subprocess.run([sys.executable, "-m", "aowf", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
