import json
import subprocess
import sys

import pytest

from ratdec.cli import main, run_pipeline


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "ratdec.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_decompose_worked_example_cli():
    code, out, err = run_cli(
        "decompose", "--field", "q", "--json",
        "(t^24-2*t^12+1)/(t^16+2*t^12+t^8)",
    )
    assert code == 0, err
    rep = json.loads(out)
    assert rep["r"] == 8
    assert rep["m"] == 10
    assert ["t^2", "(t^3-1)/(t^2+t)", "t^2", "t^2"] in rep["decompositions"]
    assert len(rep["chains"]) == len(rep["decompositions"])


def test_oracle_check_flag():
    code, out, err = run_cli(
        "decompose", "--field", "q", "--oracle-check", "--json", "t^4"
    )
    assert code == 0, err
    rep = json.loads(out)
    assert rep["oracle"] == {"agree": True, "m": 3}
    assert rep["m"] == 3


def test_trivial_decomposition():
    code, out, err = run_cli("decompose", "--field", "q", "--json", "t^2")
    assert code == 0
    rep = json.loads(out)
    assert rep["decompositions"] == [["t^2"]]


def test_text_output_runs():
    code, out, err = run_cli("decompose", "--field", "q", "t^6")
    assert code == 0
    assert "decompositions: 2" in out


def test_json_determinism_same_seed():
    args = ("decompose", "--field", "q", "--seed", "42", "--json", "t^6")
    _, out1, _ = run_cli(*args)
    _, out2, _ = run_cli(*args)
    assert out1 == out2


def test_det_flag_agrees():
    rep1 = run_pipeline("partitions", "t^6", "q")
    rep2 = run_pipeline("partitions", "t^6", "q", deterministic=True)
    assert rep1["partitions"] == rep2["partitions"]


def test_minimal_command():
    code, out, err = run_cli(
        "minimal", "--field", "q", "--json", "t^6+2*t^4+t^2+1"
    )
    assert code == 0, err
    rep = json.loads(out)
    assert rep["minimal_decompositions"] == [
        ["t^3+2*t^2+t+1", "t^2"],
        ["t^2+1", "t^3+t"],
    ]


def test_factor_command():
    code, out, err = run_cli("factor", "--field", "q", "--json", "t^4")
    assert code == 0
    rep = json.loads(out)
    assert rep["factors"] == ["x-t", "x+t", "x^2+t^2"]
    assert "partitions" not in rep


def test_exit_codes():
    code, _, err = run_cli("decompose", "--field", "q", "t^24-2*t^12+1)/(")
    assert code == 2
    code, _, _ = run_cli("nonsense-command", "t^2")
    assert code == 1
    code, _, err = run_cli("decompose", "--field", "fp:2", "t^2/2")
    assert code == 2
    code, _, _ = run_cli("minimal", "--field", "q", "--json", "(t^2+1)/t")
    assert code == 3


def test_frobenius_flagged():
    code, out, err = run_cli("decompose", "--field", "fp:2", "--json", "t^4")
    assert code == 0
    rep = json.loads(out)
    assert rep["frobenius_exponent"] == 2
    assert rep["decompositions"] == [["t^2", "t^2"]]


def test_timings_only_with_flag():
    rep = run_pipeline("partitions", "t^4", "q")
    assert "times_ms" not in rep
    rep = run_pipeline("partitions", "t^4", "q", timings=True)
    assert "times_ms" in rep


def test_extension_field_descriptor():
    code, out, err = run_cli("decompose", "--field", "fp:2^2", "--json", "t^2")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["field"] == "fp:2^2"
