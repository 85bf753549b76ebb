import os
from pathlib import Path

import pytest
from hypothesis import settings

from flowmag.fixtures import cycle, plastic, single_edge

# reproducible property tests; HYPOTHESIS_PROFILE=explore searches fresh examples
settings.register_profile("default", derandomize=True, deadline=None)
settings.register_profile("explore", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def plastic_graph():
    return plastic()


@pytest.fixture
def three_cycle():
    return cycle(3)


@pytest.fixture
def edge():
    return single_edge()


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record a criterion's verdict: ``criterion(n, detail)`` before asserting."""
    state = {}

    def record(number, detail):
        state["number"] = number
        state["detail"] = detail

    yield record
    if "number" in state:
        rep = getattr(request.node, "rep_call", None)
        passed = rep is not None and rep.passed
        ACCEPTANCE_LINES[state["number"]] = f"{'PASS' if passed else 'FAIL'}  {state['detail']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {ACCEPTANCE_LINES[number]}")
