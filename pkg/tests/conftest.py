import json
from pathlib import Path

import pytest

ORACLES = json.loads(Path(__file__).with_name("oracles.json").read_text())

_acceptance = []


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


@pytest.fixture
def report():
    """Record one labelled pass/fail line for the terminal summary."""
    def _report(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
        _acceptance.append(line)
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance:
            terminalreporter.write_line(line)
