import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from conserved_ops.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "classify_beta": ["classify", "--expr", "-i*hbar*D1", "--json"],
    "classify_gamma": ["classify", "--expr", "A*D2", "--json"],
    "classify_general": ["classify", "--expr", "2 - i*E(1)*D1 + E(1)*D2", "--json"],
    "reduce_high_order": ["reduce", "--expr", "A + 2*D1 + D3 + 4*D5 + E(1)*D4", "--json"],
    "expect_numeric": [
        "expect", "--expr", "A - 3*i*E(2)*D1 + 3*E(2)*D2", "--numeric", "--bind", "A=2", "--json",
    ],
    "expect_oscillatory": ["expect", "--expr", "E(3)", "--json"],
    "probe_delta": ["probe", "--expr", "A", "--delta", "D2", "--bind", "A=1/2", "--json"],
    "probe_family": ["probe", "--expr", "A", "--family-only", "--trials", "25", "--seed", "7",
                     "--bind", "A=1", "--json"],
    "solve_case_2": ["solve-case", "--k", "2", "--mode", "pointwise", "--json"],
    "solve_case_6": ["solve-case", "--k", "6", "--mode", "integral", "--json"],
    "phys_beta": ["phys", "--expr", "-i*A*D1", "--var", "x", "--const", "hbar", "--json"],
}


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys):
    path = GOLDEN / f"{name}.json"
    code, first, _ = run(GOLDEN_CASES[name], capsys)
    _, second, _ = run(GOLDEN_CASES[name], capsys)
    assert code == 0
    assert first == second
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(first, encoding="utf-8")
    assert first == path.read_text(encoding="utf-8")
    json.loads(first)


def test_classify_example(capsys):
    code, out, _ = run(["classify", "--expr", "-i*hbar*D1", "--json"], capsys)
    assert code == 0
    assert json.loads(out) == {"kind": "Beta", "constant": "hbar"}


def test_solve_case_text(capsys):
    code, out, _ = run(["solve-case", "--k", "2", "--mode", "pointwise"], capsys)
    assert code == 0
    assert "condition: B2 = A" in out
    assert "operator: -i*A*D1" in out


def test_expect_text(capsys):
    code, out, _ = run(["expect", "--expr", "E(3)"], capsys)
    assert (code, out) == (0, "expectation = 0\n")


def test_stdin(capsys, monkeypatch):
    code, out, _ = run(["reduce", "--json"], capsys, stdin="D3 + D4\n", monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out) == {"a0": "0", "b1": "-1", "b2": "-1"}


def test_json_keys(capsys):
    _, out, _ = run(["expect", "--expr", "A", "--numeric", "--bind", "A=3/2", "--json"], capsys)
    payload = json.loads(out)
    assert set(payload) == {"expectation", "numeric", "abs_diff"}
    assert payload["expectation"] == "A"
    _, out, _ = run(["expect", "--expr", "1/3*D2", "--json"], capsys)
    assert json.loads(out)["expectation"] == "-1/3"


@pytest.mark.parametrize(
    "argv, code, fragment",
    [
        (["classify", "--expr", "D1*A"], 2, "parse error"),
        (["expect", "--expr", "A", "--numeric"], 3, "'A'"),
        (["expect", "--expr", "A", "--numeric", "--bind", "A=x"], 2, "rational"),
        (["phys", "--expr", "E(1)"], 4, "NotConserved"),
        (["phys", "--expr", "-i*B*D1 + B*D2"], 4, "NullSymbol"),
    ],
)
def test_exit_codes(argv, code, fragment, capsys):
    got, out, err = run(argv, capsys)
    assert got == code
    assert out == ""
    assert fragment in err


def test_phys_forms(capsys):
    for expr, form in [("A", "hbar"), ("-i*A*D1", "-i*hbar*d/dx"), ("A*D2", "hbar*d^2/dx^2")]:
        code, out, _ = run(["phys", "--expr", expr], capsys)
        assert (code, out.strip()) == (0, form)


def test_verify(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert "FAIL" not in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conserved_ops", "classify", "--expr", "A*D2", "--json"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"kind": "Gamma", "constant": "A"}
