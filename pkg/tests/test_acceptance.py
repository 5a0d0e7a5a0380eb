"""One line per acceptance criterion; run with ``pytest -s`` to see the table."""

import json

import pytest

from ginvph.acceptance import CHECKS, run_check
from ginvph.cli import main


@pytest.mark.parametrize("name, fn", CHECKS, ids=[name for name, _ in CHECKS])
def test_criterion(name, fn):
    res = run_check(name, fn)
    print(f"\n{'PASS' if res.passed else 'FAIL'}  {res.name}  ({res.seconds:.2f}s)  {res.detail}")
    assert res.passed, res.detail


def test_verify_command(tmp_path, capsys):
    report = tmp_path / "report.json"
    assert main(["verify", "--report", str(report)]) == 0
    table = capsys.readouterr().out.splitlines()
    assert len(table) == len(CHECKS) and all(line.startswith("PASS") for line in table)
    rows = json.loads(report.read_text())
    assert [r["criterion"] for r in rows] == [name for name, _ in CHECKS]
