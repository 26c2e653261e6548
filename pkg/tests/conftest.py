import numpy as np
import pytest

from homlattice.state_prep import TwoParticleState

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(L, rng):
    a = rng.normal(size=(L, L)) + 1j * rng.normal(size=(L, L))
    return TwoParticleState(L, a).normalized()
