from __future__ import annotations

import json
import subprocess
import sys

import pytest

from adeverify import __version__
from adeverify.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def test_tables(capsys):
    code, doc, _ = run_json(capsys, "tables")
    assert code == 0
    assert doc["summary"] == {"pass": 60, "fail": 0}
    by_type = {r["type"]: r for r in doc["records"]}
    assert by_type["A2"]["degrees"] == [2, 3]
    assert by_type["D4"]["pi0"] == "Z/2 x Z/2"
    assert by_type["E8"]["dim_V"] == 128


def test_json_schema(capsys):
    _, doc, _ = run_json(capsys, "monodromy", "E8")
    assert set(doc) == {"command", "params", "records", "summary", "meta"}
    assert doc["meta"] == {"seed": None, "version": __version__, "schema": 1}
    assert doc["params"] == {"type": "E8"}
    assert doc["summary"]["dim_N"] == 8


def test_monodromy_flag_and_positional(capsys):
    _, a, _ = run_json(capsys, "monodromy", "D5")
    _, b, _ = run_json(capsys, "monodromy", "--type", "d_5")
    assert a == b


def test_text_output(capsys):
    code, out, _ = run(capsys, "monodromy", "A4")
    assert code == 0
    assert out.startswith("== monodromy type=A4")
    assert "pass 5  fail 0" in out


@pytest.mark.parametrize("argv", [
    ["disc", "--n", "2", "--trials", "20", "--seed", "3"],
    ["curves", "nodal", "--type", "A2", "--p", "7", "--trials", "5", "--seed", "9"],
    ["cusp", "--n", "2"],
])
def test_json_reports_are_reproducible(capsys, argv):
    code1, _, first = run_json(capsys, *argv)
    code2, _, second = run_json(capsys, *argv)
    assert code1 == code2 == 0
    assert first == second


def test_disc_report(capsys):
    code, doc, _ = run_json(capsys, "disc", "--n", "3", "--trials", "10", "--seed", "1")
    assert code == 0
    assert doc["summary"]["pass"] == 10
    assert doc["summary"]["unscaled_identity_holds"] == "0/10"
    assert {r["ratio"] for r in doc["records"]} <= {str(2 ** 12), None}
    assert doc["meta"]["seed"] == 1


def test_cusp_report_and_ledger(capsys, tmp_path):
    ledger = tmp_path / "c.jsonl"
    code, doc, _ = run_json(capsys, "cusp", "--n", "2", "--ledger", str(ledger))
    assert code == 0
    assert doc["summary"]["C"] == 167
    assert doc["summary"]["C_good"] == 11
    assert len(doc["records"]) == 11
    assert len(ledger.read_text().splitlines()) == 167


def test_cusp_cap_is_a_failure(capsys):
    code, _, err = run(capsys, "cusp", "--n", "2", "--cap", "5")
    assert code == 1
    assert "exceeded cap" in err


def test_curves_commands(capsys):
    code, doc, _ = run_json(capsys, "curves", "census", "--type", "A2", "--X", "2", "--enumerate")
    assert code == 0
    assert doc["records"][0]["product_formula"] == doc["records"][0]["enumerated"] == 105
    code, doc, _ = run_json(capsys, "curves", "scan", "--type", "A2", "--b", "-1,0", "--p", "5")
    assert code == 0 and doc["summary"]["smooth"] is True and doc["summary"]["disc"] == 4
    code, doc, _ = run_json(capsys, "curves", "scan", "--type", "D4", "--b", "0,0,0,0", "--p", "5")
    assert code == 0 and doc["records"] == [{"x": 0, "y": 0, "kind": "WORSE"}]


@pytest.mark.parametrize("argv", [
    ["monodromy", "A1"],
    ["monodromy"],
    ["monodromy", "B3"],
    ["cusp", "--n", "1"],
    ["cusp", "--n", "4"],
    ["disc", "--trials", "0"],
    ["curves", "scan", "--b", "1,2", "--p", "4"],
    ["curves", "scan", "--b", "1", "--p", "5"],
    ["curves", "scan", "--b", "x", "--p", "5"],
    ["curves", "nodal", "--type", "D4"],
    ["curves", "census", "--type", "A1", "--X", "2"],
    ["nosuch"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "adeverify.cli", "monodromy", "A2", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["fail"] == 0
