import random

import pytest
from hypothesis import HealthCheck, settings

from permpoly.field_core import make_field

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# (p, e) for q = p^e; top field GF(q^2)
SMALL_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


@pytest.fixture
def F9():
    return make_field(3, 2, 1)


@pytest.fixture
def F4():
    return make_field(2, 2, 1)


@pytest.fixture
def F16():
    return make_field(2, 4, 2)


@pytest.fixture
def F49():
    return make_field(7, 2, 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
