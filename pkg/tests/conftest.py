import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from siegel_theta.checks import random_siegel

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

TAU2 = np.array([[0.1 + 1.1j, 0.2 + 0.1j], [0.2 + 0.1j, -0.2 + 1.3j]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tau2():
    return TAU2.copy()


@pytest.fixture
def random_taus(rng):
    def make(g, n):
        return [random_siegel(g, rng) for _ in range(n)]

    return make
