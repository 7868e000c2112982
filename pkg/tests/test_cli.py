import json
import os
import subprocess
import sys

import pytest

from boundnets.cli import main

NET = os.path.join(os.path.dirname(__file__), os.pardir, "nets", "n0.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys, tmp_path):
    code, out, _ = run(capsys, "bound", NET)
    assert code == 0
    data = json.loads(out)
    t1 = next(t for t in data["transitions"] if t["name"] == "t1")
    assert t1["in"] == {"a+": 1, "b+": 1, "c-": 1} and t1["out"] == {"a-": 1, "b-": 1, "c+": 1}
    path = tmp_path / "b.json"
    code, _, _ = run(capsys, "bound", NET, "--capacity", "a=1", "--capacity", "b=4", "--capacity", "c=2", "-o", str(path))
    assert code == 0
    assert json.loads(path.read_text())["marking"] == {"a+": 1, "b+": 1, "b-": 3, "c+": 1, "c-": 1}


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", NET, "--fire", "t1", "--fire", "t2")
    assert code == 0
    assert out.splitlines() == ["0 {a:1, b:1, c:1}", "1 {c:2} after t1", "2 {b:2, c:1} after t2"]
    code, out, _ = run(capsys, "simulate", NET, "--fire", "t2", "--fire", "t2")
    assert code == 1 and "not enabled" in out


def test_explore(capsys, tmp_path):
    dot = tmp_path / "r.dot"
    code, out, _ = run(capsys, "explore", NET, "--k-bounded", "4", "--dot", str(dot))
    assert code == 0 and "nodes: 5" in out and "4-bounded: true" in out
    assert dot.read_text().startswith("digraph")
    code, out, _ = run(capsys, "explore", NET, "--k-bounded", "3")
    assert code == 1 and "3-bounded: false" in out


def test_chi_and_semantics(capsys):
    code, out, _ = run(capsys, "chi", NET, "{a:1, b:1, c:1} | t2 ; t1")
    assert code == 0 and "chi: {t1:1, t2:1}" in out and "normal form: t1 ; t2" in out
    code, out, _ = run(capsys, "chi", NET, "a b | t1", "--philosophy", "indiv")
    assert code == 0 and "cod: c" in out
    code, out, _ = run(capsys, "semantics", NET, "{a:1, b:1} | t1", "--bound", "2")
    assert code == 0 and out.startswith("tip of")
    code, out, _ = run(capsys, "semantics", NET, "c | t2", "--philosophy", "indiv", "--bound", "2")
    assert code == 0 and "tip over c -> b b" in out
    code, out, _ = run(capsys, "chi", NET, "{c:1} | t1")
    assert code == 1 and out.startswith("invalid")


def test_check_comonad(capsys):
    code, out, _ = run(capsys, "check-comonad", NET)
    assert code == 0 and "[comm]" in out and "[free]" in out and "FAIL" not in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", NET, "--token-bound", "3", "--firing-bound", "2")
    assert code == 0 and "PASS" in out and "objects matched: 84" in out
    code, out, _ = run(capsys, "verify", NET, "--token-bound", "4", "--firing-bound", "2")
    assert code == 1
    code, out, _ = run(capsys, "verify", NET, "--philosophy", "indiv", "--token-bound", "2", "--firing-bound", "1",
                       "--pullback", "--coherence", "5")
    assert code == 0 and "negative control caught: yes" in out


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", NET, "--bounded")
    assert code == 0 and out.count("shape=circle") == 6


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "bound", NET, "--capacity", "a")
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.json"
    bad.write_text('{"places": [')
    code, _, err = run(capsys, "simulate", str(bad))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "chi", NET, "t1")
    assert code == 2
    code, _, err = run(capsys, "simulate", str(tmp_path / "missing.json"))
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", NET, "--token-bound", "-1"])
    assert e.value.code == 2


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "boundnets.cli", "verify", NET, "--coherence", "5", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
