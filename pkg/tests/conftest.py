"""Shared fixtures plus a per-criterion verdict block for the acceptance run."""

import re

import pytest
from hypothesis import settings

from segmarket import PriceWindow, market

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture
def m1():
    """Reference market: values 1,2,3,6 with masses 0.36/0.20/0.18/0.26."""
    return market([1, 2, 3, 6], ["0.36", "0.20", "0.18", "0.26"])


@pytest.fixture
def w23():
    """Window covering values 2 and 3 of the reference grid."""
    return PriceWindow(1, 2)


@pytest.fixture
def v152():
    """Market whose unique optimal price (100) towers over the rest."""
    return market([1, 2, 100], ["100/152", "50/152", "2/152"])


_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION.search(report.nodeid)
    if match is None:
        return
    interesting = report.when == "call" or (
        report.when == "setup" and report.outcome != "passed"
    )
    if not interesting:
        return
    results = getattr(item.config, "_criterion_results", None)
    if results is None:
        results = {}
        item.config._criterion_results = results
    doc = item.function.__doc__ or ""
    title = doc.strip().splitlines()[0].rstrip(".") if doc.strip() else item.name
    results[int(match.group(1))] = (report.outcome, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criterion_results", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        outcome, title = results[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:02d} [{verdict}] {title}")
