import numpy as np
import pytest

from fftsim import NumericMode, Q15

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def exact():
    return NumericMode.exact_float()


@pytest.fixture
def q15():
    return NumericMode.fixed(Q15)


def random_complex(rng, shape, amp=0.5):
    return rng.uniform(-amp, amp, shape) + 1j * rng.uniform(-amp, amp, shape)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
