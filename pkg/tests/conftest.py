import numpy as np
import pytest
from hypothesis import strategies as st

from artifact.params import BoundaryParams, ModelParams

Q = 0.9 + 0.4j
U = 1.2 - 0.3j
BOUNDARY = BoundaryParams(eps_plus=1.1 + 0.2j, eps_minus=0.8 - 0.1j, k_plus=0.9 + 0.3j, k_minus=1.2 - 0.4j,
                          kappa=0.7 + 0.5j, kappa_star=1.3 - 0.2j, kappa_plus=0.6 + 0.1j, kappa_minus=0.9 - 0.6j)
TWO_SITE = ModelParams(q=Q, ts=(np.exp(0.3j), np.exp(-1.1j)), vs=(1.1 + 0.2j, 0.9 - 0.1j), boundary=BOUNDARY)


def polar(lo=0.75, hi=1.35):
    """Generic complex numbers in an annulus, kept away from the unit-circle roots that degenerate R."""
    return st.builds(lambda r, ph: complex(r * np.exp(1j * ph)),
                     st.floats(lo, hi), st.floats(0.0, 2 * np.pi))


def generic_q():
    return polar().filter(lambda q: abs(q - 1) > 0.1 and abs(np.sqrt(q) + 1 / np.sqrt(q)) > 0.3)


def spectral():
    return polar().filter(lambda u: abs(u * u - 1) > 0.1)


def phase():
    return st.floats(0.0, 2 * np.pi).map(lambda a: complex(np.exp(1j * a)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
