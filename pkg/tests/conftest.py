"""Shared fixtures."""

from pathlib import Path

import pytest

from zaremba_heat.invariants import load_domain

DOMAINS = Path(__file__).resolve().parents[1] / "domains"


@pytest.fixture(scope="session")
def domains_dir() -> Path:
    return DOMAINS


@pytest.fixture(scope="session")
def zaremba_square():
    return load_domain(DOMAINS / "zaremba_square.json")


@pytest.fixture(scope="session")
def zaremba_disk():
    return load_domain(DOMAINS / "zaremba_disk.json")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
    missing = [n for n in range(1, 13) if n not in results]
    if missing:
        terminalreporter.write_line(f"not run: criteria {missing}")
