import math

import pytest
from hypothesis import HealthCheck, settings

from sectorexp.functions import make_exponential
from sectorexp.geometry import SectorPair

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

QUARTER = math.pi / 4

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance_log():
    def log(number: int, passed: bool, detail: str):
        ACCEPTANCE[number] = (bool(passed), detail)
    return log


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def quarter():
    return SectorPair(QUARTER, QUARTER)


@pytest.fixture
def exp11(quarter):
    return make_exponential(1, 1, quarter)
