from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from knotcover.diagram import PlanarDiagram

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def trefoil() -> PlanarDiagram:
    return PlanarDiagram(((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)), (1, 1, 1))


@pytest.fixture
def figure_eight() -> PlanarDiagram:
    return PlanarDiagram(((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)))


@pytest.fixture
def hopf() -> PlanarDiagram:
    return PlanarDiagram(((1, 3, 2, 4), (3, 1, 4, 2)), (1, 1))


def pytest_terminal_summary(terminalreporter) -> None:
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
