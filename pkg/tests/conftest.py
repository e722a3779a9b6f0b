import numpy as np
import pytest

from symkdv.stencil import Stencil

ACCEPTANCE_LINES = []


def unit_stencil(t=1.0, th=2.0, x=0.0, u=0.0, uh=(0.0,) * 5, xs=(-2.0, -1.0, 0.0, 1.0, 2.0)):
    return Stencil(x, t, u, *xs, th, *uh)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
