import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corolla.generators import enumerate_small, fixture, fixtures  # noqa: E402


@pytest.fixture(scope="session")
def small4():
    return list(enumerate_small(4))


@pytest.fixture
def theta():
    return fixture("THETA")


@pytest.fixture(scope="session")
def all_fixtures():
    return fixtures()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
