import numpy as np
import pytest
from hypothesis import strategies as st

from biqutrit.core import make_qutrit

ACCEPTANCE_LINES = []


def random_qutrits(n, seed=0):
    """Complex-Gaussian amplitudes, normalized: uniform on the state sphere."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
    return [make_qutrit(*row) for row in z]


@pytest.fixture(scope="session")
def qutrits_10k():
    return random_qutrits(10_000, seed=20240601)


_part = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
amplitudes = st.tuples(*[st.builds(complex, _part, _part)] * 3).filter(
    lambda t: sum(abs(z) ** 2 for z in t) > 1e-6
)
qutrits = amplitudes.map(lambda t: make_qutrit(*t))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
