from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from kpw.fixtures import load

settings.register_profile("kpw", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("kpw")


@pytest.fixture(scope="session")
def graphs():
    return {name: load(name) for name in ("G1", "G2", "G3", "G4")}


@pytest.fixture(scope="session")
def G1(graphs):
    return graphs["G1"]


@pytest.fixture(scope="session")
def G2(graphs):
    return graphs["G2"]


@pytest.fixture(scope="session")
def G3(graphs):
    return graphs["G3"]


@pytest.fixture(scope="session")
def G4(graphs):
    return graphs["G4"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
