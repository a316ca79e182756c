from __future__ import annotations

import json
import subprocess
import sys

import pytest

from tautilt import cli
from tautilt.errors import ExchangeFailure
from tautilt.fan import FanReport


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = cli.main([*argv, "--out", str(out)])
    text = out.read_text() if out.exists() else None
    return code, (json.loads(text) if text and text.startswith("{") else text)


def test_explore_pentagon(tmp_path):
    code, rep = run(tmp_path, "explore", "--preset", "linear_A:2")
    assert code == 0
    assert rep["schema"] == 1 and rep["seed"] == 0
    s = rep["summary"]
    assert (s["nodes"], s["connected"], s["complete"], s["regular"]) == (5, True, True, True)


def test_explore_kronecker_budget(tmp_path):
    code, rep = run(tmp_path, "explore", "--preset", "kronecker", "--budget", "81")
    assert code == 0
    assert rep["summary"]["nodes"] == 81 and rep["summary"]["complete"] is False
    code, _ = run(tmp_path, "explore", "--preset", "kronecker", "--budget", "9", "--require-complete")
    assert code == 3


def test_fan_command(tmp_path):
    code, rep = run(tmp_path, "fan", "--preset", "linear_A:3", "--samples", "1000")
    assert code == 0
    assert rep["fan"]["ok"] and rep["coverage"]["fraction"] == "1/1"


def test_fan_with_exclusion(tmp_path):
    code, rep = run(tmp_path, "fan", "--preset", "kronecker", "--budget", "41", "--samples", "200",
                    "--exclude-ray", "1,-1:1/5")
    assert code == 0
    assert rep["coverage"]["fraction"] == "1/1"
    assert rep["coverage"]["exclusions"] == [{"ray": ["1/1", "-1/1"], "radius": "1/5"}]


def test_quotient_command(tmp_path):
    code, rep = run(tmp_path, "quotient", "--preset", "kronecker", "--kill-arrow", "b",
                    "--budget", "81", "--samples", "200")
    assert code == 0
    assert rep["b_summary"]["connected"] and rep["b_summary"]["nodes"] == 5
    assert rep["containment"]["all_witnessed"]


def test_quotient_from_second_file(tmp_path):
    alg = tmp_path / "a2.alg"
    alg.write_text("vertex 1\nvertex 2\narrow a: 1 -> 2\n")
    code, rep = run(tmp_path, "quotient", "--preset", "kronecker", "--quotient-file", str(alg),
                    "--budget", "21", "--samples", "50")
    assert code == 0 and len(rep["containment"]["cones"]) == 5


def test_drop_vertex(tmp_path):
    code, rep = run(tmp_path, "quotient", "--preset", "linear_A:3", "--drop-vertex", "2")
    assert code == 0 and rep["b_summary"]["nodes"] == 4
    code, _ = run(tmp_path, "quotient", "--preset", "linear_A:2", "--drop-vertex", "1",
                  "--drop-vertex", "2")
    assert code == 4


def test_reduce_command(tmp_path):
    code, rep = run(tmp_path, "reduce", "--preset", "linear_A:3", "--pin", "P1")
    assert code == 0
    assert rep["verification"]["isomorphic"] and rep["verification"]["reduced_algebra_vertices"] == 2
    code, rep = run(tmp_path, "reduce", "--preset", "linear_A:3", "--pin", "1,1,0;a=1;b=")
    assert code == 0 and rep["verification"]["isomorphic"]


def test_oracle_check_and_stability(tmp_path):
    code, rep = run(tmp_path, "oracle-check", "--preset", "cyclic_nakayama:3,2")
    assert code == 0 and rep["agree"]
    code, rep = run(tmp_path, "stability", "--preset", "linear_A:2", "--module", "1,1;a=1",
                    "--theta=1,-1", "--theta=-1,1")
    assert code == 0
    assert [t["semistable"] for t in rep["theta"]] == [True, False]
    assert rep["submodule_dim_vectors"] == [[0, 0], [0, 1], [1, 1]]


def test_json_is_byte_identical(tmp_path):
    args = ["fan", "--preset", "linear_A:3", "--samples", "300", "--seed", "4"]
    cli.main([*args, "--out", str(tmp_path / "a.json")])
    cli.main([*args, "--threads", "3", "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert json.loads((tmp_path / "a.json").read_text())["coverage"]["seed"] == 4


def test_dot_output(tmp_path):
    code, text = run(tmp_path, "explore", "--preset", "linear_A:2", "--format", "dot", name="g.dot")
    assert code == 0 and text.startswith("graph exchange {")


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertex 1\nnonsense here\n")
    assert cli.main(["explore", "--file", str(bad)]) == 1
    assert cli.main(["explore", "--file", str(tmp_path / "missing.alg")]) == 1
    assert cli.main(["explore", "--preset", "linear_A:9"]) == 1
    assert cli.main(["explore"]) == 1
    assert cli.main(["explore", "--preset", "linear_A:2", "--budget", "0"]) == 1
    assert cli.main(["fan", "--preset", "linear_A:2", "--exclude-ray", "1,1"]) == 1
    assert cli.main(["nosuchcommand"]) == 1


def test_algebra_errors(tmp_path):
    loop = tmp_path / "loop.alg"
    loop.write_text("vertex 1\narrow x: 1 -> 1\nlengthcap 4\n")
    assert cli.main(["explore", "--file", str(loop)]) == 4


def test_exchange_failure_exit(monkeypatch, tmp_path):
    def boom(*a, **k):
        raise ExchangeFailure("forced")
    monkeypatch.setattr(cli, "explore", boom)
    assert cli.main(["explore", "--preset", "linear_A:2"]) == 2


def test_verification_failure_exit(monkeypatch, tmp_path):
    monkeypatch.setattr(cli, "check_fan", lambda g: FanReport(0, 0, [{"kind": "overlap"}]))
    code, rep = run(tmp_path, "fan", "--preset", "linear_A:2", "--samples", "10")
    assert code == 5 and rep["fan"]["ok"] is False


def test_other_errors_exit(tmp_path):
    # brute-force stability refuses the rationals
    assert cli.main(["stability", "--preset", "linear_A:2", "--field", "Q", "--module", "1,0;a="]) == 6


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "tautilt", "explore", "--preset", "linear_A:1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["summary"]["nodes"] == 2
