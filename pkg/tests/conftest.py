import numpy as np
import pytest
from burgers_series.models.series import DomainSpec, SolverConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def viscous():
    return SolverConfig(nu=1.0, order=30)


@pytest.fixture
def small_domain():
    return DomainSpec(-2 * np.pi, 2 * np.pi, 0.0, 3.0, nx=17, nt=7)


def exp_iz(x):
    return np.exp(1j * np.asarray(x))


@pytest.fixture
def exp_ic():
    return exp_iz
