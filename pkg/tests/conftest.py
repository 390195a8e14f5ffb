import re

import pytest

from aglab.enumeration import SearchConfig, enumerate_ag_groupoids
from aglab.fixtures import example

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def ex():
    return example("ex")


@pytest.fixture(scope="session")
def e2():
    return example("e2")


@pytest.fixture(scope="session")
def t():
    return example("t")


@pytest.fixture(scope="session")
def small_classes():
    """One AG-groupoid per isomorphism class, orders 1 to 3."""
    return [m for n in (1, 2, 3) for m in enumerate_ag_groupoids(SearchConfig(n, up_to_isomorphism=True))]


@pytest.fixture(scope="session")
def small_labeled():
    """Every labeled AG-groupoid of order 1 to 3."""
    return [m for n in (1, 2, 3) for m in enumerate_ag_groupoids(SearchConfig(n))]


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[int(m.group(1))] = ("PASS" if report.outcome == "passed" else "FAIL", m.group(2))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        verdict, name = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {verdict}  {name.replace('_', ' ')}")
