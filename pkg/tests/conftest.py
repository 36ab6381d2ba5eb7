import numpy as np
import pytest

from scldpc.codeconstruct import assemble_sc
from scldpc.presets import PRESETS


@pytest.fixture(scope="session")
def bc1():
    return PRESETS["block-code-1"]


@pytest.fixture(scope="session")
def H_bc1(bc1):
    return assemble_sc(bc1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
