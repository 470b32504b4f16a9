import math

import numpy as np
import pytest

from cascadelab.filters import haar, theta_family

# theta = k pi / 20, k = -9..9, published limit values at x = 1, 3/2, 2 (4 decimals)
REFERENCE_PEAKS = {
    -9: (-5.8531, 0, 6.8531),
    -8: (-2.6569, 0, 3.6569),
    -7: (-1.5826, 0, 2.5826),
    -6: (-1.0388, 0, 2.0388),
    -5: (-0.7071, 0, 1.7071),
    -4: (-0.4813, 0, 1.4813),
    -3: (-0.3159, 0, 1.3159),
    -2: (-0.1882, 0, 1.1882),
    -1: (-0.0854, 0, 1.0854),
    0: (0.0000, 0, 1.0000),
    1: (0.0730, 0, 0.9270),
    2: (0.1367, 0, 0.8633),
    3: (0.1936, 0, 0.8064),
    4: (0.2452, 0, 0.7548),
    5: (0.2929, 0, 0.7071),
    6: (0.3375, 0, 0.6625),
    7: (0.3800, 0, 0.6200),
    8: (0.4208, 0, 0.5792),
    9: (0.4606, 0, 0.5394),
}


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def sample_filters():
    """A few validated filters: Haar, Daubechies-4 and members of the theta family."""
    return [
        haar(),
        theta_family(-math.pi / 6),  # Daubechies 4-tap (up to a shift)
        theta_family(math.pi / 4),
        theta_family(9 * math.pi / 20),
        theta_family(-2 * math.pi / 5),
    ]


def random_complex(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance as acc

    if acc.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(acc.RESULTS):
            terminalreporter.write_line(acc.summary_line(k))
