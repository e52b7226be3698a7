import io
import json
import os
import subprocess
import sys

import pytest

from superk1.cli import run


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_charpoly_text():
    code, out, _ = _run(["charpoly"])
    assert code == 0
    assert out.splitlines()[0] == "T^4 + 9"
    assert out.rstrip().endswith("OVERALL: PASS")


def test_curve_info():
    code, out, _ = _run(["curve-info"])
    assert code == 0 and out.startswith("genus 2  S = ")


@pytest.mark.parametrize("cmd", ["lemma21", "lemma22", "lemma24", "div-g", "torsion", "sigma", "boundary"])
def test_subcommands_pass(cmd):
    code, out, _ = _run([cmd, "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert all(c["status"] == "pass" for c in doc["claims"])


def test_json_omits_timings():
    _, out, _ = _run(["lemma22", "--format", "json"])
    assert "seconds" not in out


@pytest.mark.parametrize("argv", [["curve-info", "--n", "6"], ["curve-info", "--m", "3"],
                                  ["verify-all", "--primes", "5"], ["verify-all", "--p", "5"],
                                  ["bogus"], ["charpoly", "--primes", "x,y"]])
def test_invalid_input_exits_2(argv):
    code, _, _ = _run(argv)
    assert code == 2


def test_invalid_message():
    code, _, err = _run(["curve-info", "--n", "6"])
    assert code == 2 and err.startswith("invalid input: gcd(n,6) must be 1")


def test_verify_all_is_deterministic_across_processes():
    outs = []
    for seed in ("0", "1"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, "-m", "superk1", "verify-all", "--format", "json"],
                              capture_output=True, env=env, check=False)
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["params"]["primes"] == [7, 11, 13]
