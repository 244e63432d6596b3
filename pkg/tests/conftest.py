from __future__ import annotations

from pathlib import Path

import pytest

from dnlogic.syntax import parse_formula

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.failed or rep.skipped):
        return
    number, title = mark.args
    _, ok, spent = item.config._criteria.get(number, (title, True, 0.0))
    item.config._criteria[number] = (title, ok and rep.passed, spent + rep.duration)


def pytest_terminal_summary(terminalreporter, config):
    results = config._criteria
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        title, ok, spent = results[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({spent:.1f} s)")


@pytest.fixture
def P():
    return parse_formula


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES
