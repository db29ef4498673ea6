from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given

from hahnsat import report
from hahnsat.cli import main
from hahnsat.errors import ParseError
from hahnsat.harness import SuiteConfig, run_suite
from hahnsat.series import Precision
from hahnsat.syntax import render
from hahnsat.workspace import Workspace

from strategies import any_series


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def json_result(out: str) -> dict:
    records = report.loads(out)
    assert len(records) == 1
    return records[0]["result"]


# -- eval ----------------------------------------------------------------------

def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "(1+t1)^(1/2)")
    assert code == 0 and out.startswith("1 + 1/2*t1 - 1/8*t1^2")
    code, out, _ = run(capsys, "eval", "t1/t1")
    assert code == 0 and out.splitlines()[0] == "1"
    code, _, err = run(capsys, "eval", "1/0")
    assert code == 2 and "ZeroDivisor" in err
    code, _, err = run(capsys, "eval", "1 +")
    assert code == 2 and "position" in err


def test_eval_reports_valuation_sign_residue(capsys):
    code, out, _ = run(capsys, "eval", "--dim", "2", "--format", "json", "3 - t1 + t2")
    res = json_result(out)
    assert res == {"exact": True, "residue": "3", "series": "3 + t2 - t1", "sign": 1, "valuation": "(0, 0)"}


def test_precision_exhaustion_exit_code(capsys):
    code, _, err = run(capsys, "pseudo", "0; t1; t1 + O(t1^2)")
    assert code == 3 and "Undecidable" in err


# -- classify / realize -----------------------------------------------------------

@pytest.mark.parametrize(
    "argv, case",
    [
        (["--dim", "2", "--gens", "t1", "--x0", "t2"], "ValueTranscendental"),
        (["--gens", "t1", "--x0", "sqrt2 + t1", "--sample-coeff", "q"], "ResidueTranscendental"),
        (["--gens", "t1", "--x0", " + ".join(f"t1^({2 * k - 1}/{k})" for k in range(2, 10))],
         "ImmediateTranscendental"),
    ],
)
def test_classify_and_realize_canonical(capsys, argv, case):
    code, out, _ = run(capsys, "classify", "--format", "json", *argv)
    assert code == 0 and json_result(out)["case"] == case
    code, out, _ = run(capsys, "realize", "--format", "json", *argv)
    res = json_result(out)
    assert code == 0 and res["case"] == case and res["checks_passed"] > 0


def test_classify_equality_and_usage(capsys):
    code, out, _ = run(capsys, "classify", "--gens", "t1", "--x0", "t1 + 1")
    assert code == 0 and out.startswith("EqualityDetected")
    code, _, err = run(capsys, "classify", "--gens", "t1")
    assert code == 2 and "--x0" in err


def test_realize_deepens(capsys):
    argv = ["--dim", "2", "--gens", "t1", "--x0", "t1^(1/2) + t1*t2"]
    code, out, _ = run(capsys, "classify", *argv)
    assert code == 0 and out.startswith("AmbiguousAtDepth")
    code, out, _ = run(capsys, "realize", *argv)
    assert code == 0 and "realizer: t1^(1/2) + t1*t2^(1/2)" in out and "deepened" in out


# -- suites -----------------------------------------------------------------------

def test_suite_examples(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "suite", "dimension-inequality", "--trials", "10", "--seed", "7", "--depth", "2",
                       "--report", str(path))
    assert code == 0 and "10 passed, 0 failed" in out
    assert report.loads(path.read_text())[0]["result"]["failed"] == 0
    code, out, _ = run(capsys, "suite", "eta0", "--order", "gamma", "--trials", "10")
    assert code == 0 and "no_witness" in out
    code, _, err = run(capsys, "suite", "nosuch")
    assert code == 2


def test_suite_reports_are_byte_identical(capsys, tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"r{i}.jsonl"
        run(capsys, "suite", "condition3", "--trials", "8", "--seed", "3", "--report", str(path))
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_timing_is_opt_in():
    rep = run_suite("eta0", SuiteConfig(trials=3))
    assert "wall_time" not in report.suite_result(rep)
    assert "wall_time" in report.suite_result(rep, timing=True)


# -- pseudo -------------------------------------------------------------------

def test_pseudo_command(capsys):
    code, out, _ = run(capsys, "pseudo", "--format", "json", "0; t1; t1 + t1^2", "--candidate", "t1 + t1^2 + t1^5")
    res = json_result(out)
    assert code == 0 and res["valid"] and res["gammas"] == ["(1)", "(2)"] and res["candidate_is_limit"]
    code, out, _ = run(capsys, "pseudo", "0; t1^2; t1^2 + t1")
    assert code == 0 and out.startswith("not pseudo-Cauchy")


# -- reports ------------------------------------------------------------------

def test_report_format():
    text = report.dumps([report.record("x", {"p": Precision.default(2)}, {"v": [1, "a"]})])
    lines = text.splitlines()
    assert json.loads(lines[0]) == {"format": "hahnsat-report", "version": 1}
    assert json.loads(lines[1])["config"]["p"] == "(4, 0)"
    with pytest.raises(TypeError):
        report.to_jsonable(0.5)
    with pytest.raises(ValueError):
        report.loads('{"format": "other"}\n')


# -- workspaces ---------------------------------------------------------------

def test_workspace_let_and_reuse(capsys, tmp_path):
    ws = tmp_path / "ws.txt"
    code, out, _ = run(capsys, "let", "--workspace", str(ws), "--dim", "2", "x", "t1 + t2^(1/2)")
    assert code == 0 and out.strip() == "x = t2^(1/2) + t1"
    code, out, _ = run(capsys, "eval", "--workspace", str(ws), "x^2")
    assert code == 0 and out.splitlines()[0] == "t2 + 2*t1*t2^(1/2) + t1^2"
    text = ws.read_text()
    assert Workspace.loads(text).dumps() == text
    code, _, err = run(capsys, "let", "--workspace", str(ws), "t1", "1")
    assert code == 2


def test_workspace_extend_reembeds():
    ws = Workspace(1)
    ws.bind("x", "t1 + 1")
    ws.extend(2)
    assert ws.dim == 3 and render(ws.bindings["x"]) == "1 + t1"
    assert ws.parse("x * t3") == ws.parse("t3 + t1*t3")
    assert Workspace.loads(ws.dumps()).bindings == ws.bindings


def test_workspace_errors():
    with pytest.raises(ParseError):
        Workspace.loads("dim 2\n")
    with pytest.raises(ParseError):
        Workspace.loads("# hahnsat workspace v1\nbogus 1\n")


@given(any_series(2))
def test_workspace_bindings_roundtrip(s):
    ws = Workspace(2)
    ws.bind("s", s)
    assert Workspace.loads(ws.dumps()).bindings["s"] == s


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hahnsat", "eval", "t1*t1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("t1^2")
