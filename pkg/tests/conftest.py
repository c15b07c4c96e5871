from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from opext import corpus

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def a2():
    return corpus.load("a2")


@pytest.fixture(scope="session")
def a3():
    return corpus.load("a3")


@pytest.fixture(scope="session")
def a3_rel():
    return corpus.load("a3_rel")


@pytest.fixture(scope="session")
def one_vertex():
    return corpus.load("one_vertex")


@pytest.fixture(scope="session", params=[0, 1, 2], ids=["a2+P1", "a2+P2", "a3_rel+P1"])
def ctx(request):
    return corpus.extension(request.param)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
