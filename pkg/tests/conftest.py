from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from qfano.catalog import build_h, build_pi, isom_data
from qfano.verifier import default_context

settings.register_profile("qfano", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qfano")


@pytest.fixture(scope="session")
def pi():
    return build_pi()


@pytest.fixture(scope="session")
def h():
    return build_h()


@pytest.fixture(scope="session")
def isom():
    return isom_data()


@pytest.fixture(scope="session")
def ctx():
    """A small-sample context for fast structural tests."""
    return default_context(seed=42, samples=10)


def frac_point(**kw):
    return {k: Fraction(v) for k, v in kw.items()}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
