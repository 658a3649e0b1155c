import os

import pytest

from triarr.analysis import section6_pair
from triarr.arrangement import full_monomial, triangle
from triarr.exactmath import find_field

# acceptance results, filled by tests/test_acceptance.py and printed at the end
CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exhaustive runs")


WORKERS = max(1, min(8, os.cpu_count() or 1))


@pytest.fixture(scope="session")
def workers():
    return WORKERS


@pytest.fixture(scope="session")
def pair():
    return section6_pair()


@pytest.fixture(scope="session")
def A0(pair):
    return pair[0]


@pytest.fixture(scope="session")
def A1(pair):
    return pair[1]


@pytest.fixture(scope="session")
def tri():
    return triangle()


@pytest.fixture(scope="session")
def fm2():
    return full_monomial(2)


def field_for(A):
    return find_field(A.n, 2 ** 20)
