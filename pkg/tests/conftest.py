import numpy as np
import pytest

from darboux_dirac import DarbouxConfig, Grid, ModelParams

GRID = Grid(0.2, 8.0, 400)
TGRID = Grid(0.1, 8.0, 1000)


@pytest.fixture
def p111():
    """m = omega = l = 1 with n = 0."""
    return ModelParams(omega=1.0, l=1, m=1.0, n=0.0)


@pytest.fixture
def first_order(p111):
    return DarbouxConfig(p111, (-0.5,))


@pytest.fixture
def second_order():
    return DarbouxConfig(ModelParams(omega=1.0, l=1, m=1.0), (1.5, 1.25))


def rel_max(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
