import re

import pytest
from hypothesis import HealthCheck, settings

from locinv.fixtures import all_semigroups, corpus

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def small_semigroups():
    return all_semigroups(3)


@pytest.fixture(scope="session")
def fixture_corpus():
    return corpus()


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(a\d+)_", report.nodeid)
    if not m:
        return
    key = m.group(1).upper()
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = report.nodeid.split("::")[-1]
        _ACCEPTANCE[key] = (report.outcome, doc)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k[1:])):
        outcome, name = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if outcome == 'passed' else 'FAIL'}  ({name})")
