import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from telegate.processor import DataState  # noqa: E402
from telegate.sampling import make_rng, random_data_states  # noqa: E402


@pytest.fixture
def rng():
    return make_rng(20240917)


def random_data(rng, count):
    return [DataState.from_array(a) for a in random_data_states(rng, count)]


@pytest.fixture
def sample_data():
    return DataState(0.6, 0.8j)


def random_unitary(rng):
    q, r = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])
