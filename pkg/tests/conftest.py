import os

import pytest
from hypothesis import HealthCheck, settings

from heapcurve.chord_tangent import INFINITY, WeierstrassCurve
from heapcurve.endo_truss import EndoSpace, generate_endo_set
from heapcurve.finite_field import make_field

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# filled in by test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def f5_curve():
    """y^2 = x^3 - x over F_5, eight points."""
    return WeierstrassCurve.over(make_field(5), -1, 0)


@pytest.fixture(scope="session")
def f13_curve():
    return WeierstrassCurve.over(make_field(13), 1, 1)


@pytest.fixture(scope="session")
def f25_curve():
    """y^2 = x^3 - x over F_25 = F_5[t]/(t^2 - 2)."""
    return WeierstrassCurve.over(make_field(5, 2), -1, 0)


@pytest.fixture(scope="session")
def f5_space(f5_curve):
    return EndoSpace(f5_curve)


@pytest.fixture(scope="session")
def f13_space(f13_curve):
    return EndoSpace(f13_curve)


@pytest.fixture(scope="session")
def f25_space(f25_curve):
    return EndoSpace(f25_curve)


@pytest.fixture(scope="session")
def f5_endos(f5_space):
    return generate_endo_set(f5_space, INFINITY, depth=2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
