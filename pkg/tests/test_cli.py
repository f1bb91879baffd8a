import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from selfref.cli import main
from cli_cases import CASES

TESTS = Path(__file__).parent
GOLDEN = TESTS / "fixtures" / "cli"


@pytest.fixture(autouse=True)
def _in_tests_dir(monkeypatch):
    monkeypatch.chdir(TESTS)


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("stem,argv", CASES, ids=[c[0] for c in CASES])
def test_structured_golden(stem, argv):
    code, out = run(argv + ["--format", "structured"])
    assert code == 0
    assert out == (GOLDEN / f"{stem}.json").read_text()


def _golden(stem):
    return json.loads((GOLDEN / f"{stem}.json").read_text())


def test_golden_contents_make_sense():
    assert _golden("diagonalize_pi")["identity"] is True
    assert _golden("diagonalize_sigma")["class"] == "sigma1"
    assert _golden("goedel_all")["verdict"] == "false"
    assert _golden("goedel_simple")["verdict"] == "true"
    assert _golden("rosser_simple")["verdict"] == "true"
    assert _golden("goedel_opaque")["verdict"] == "unknown"
    assert _golden("audit_simple")["passed"] is True
    assert _golden("audit_planted")["violations"] == [1]
    assert _golden("audit_all")["violations"][0] == 2064
    assert _golden("audit_layered")["violations"] == [0]
    cases = {s: _golden(f"rosser_cases_{s}") for s in ("i", "ii", "only_one")}
    assert [(c["case"], c["rpr_phi"]["verdict"]) for c in cases.values()] == [
        ("I", "true"), ("II", "false"), ("OnlyOne", "true")]
    assert _golden("pseudo_p")["decided"] == "negative"
    assert _golden("pseudo_r")["decided"] == "negative" and _golden("pseudo_r")["verdict"] == "false"
    assert _golden("pseudo_tautology")["decided"] == "positive"
    assert _golden("eval_exists")["certificate"] == [["y", 2]]
    assert _golden("eval_forall")["certificate"] == [["x", 1]]
    assert _golden("classify")["class"] == "pi2"


def test_deterministic_across_runs():
    for stem, argv in CASES[:6]:
        assert run(argv) == run(argv)


def test_text_output():
    code, out = run(["eval", "exists y. S(0) + S(0) = y"])
    assert code == 0
    assert "verdict: true" in out and "certificate: y=2" in out


def test_codec_spec_text():
    code, out = run(["codec-spec"])
    assert code == 0 and "Cantor pairing" in out and "BExists" in out


@pytest.mark.parametrize("argv,code", [
    (["diagonalize", "x = "], 1),
    (["goedel", "--theory", "fixtures/theories/missing.thy"], 1),
    (["goedel"], 1),
    (["eval", "x = 0"], 1),
    (["audit", "--theory", "fixtures/theories/simple.thy"], 1),
    (["audit", "--theory", "fixtures/theories/simple.thy", "--class", "omega"], 1),
    (["eval", "0 = 0", "--fuel", "0"], 1),
    (["pseudo", "p1 & p2", "--context", "p", "--theory", "fixtures/theories/simple.thy"], 1),
    (["nonsense"], 1),
    (["diagonalize", "forall z. z = x", "--mode", "sigma"], 2),
    (["diagonalize", "x = y"], 2),
    (["diagonalize", "exists y. forall z. y = x + z"], 2),
])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "selfref", "classify", "exists y. y = 0", "--format", "structured"],
        capture_output=True, text=True, cwd=TESTS,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"class": "sigma1", "formula": "exists y. y = 0"}
