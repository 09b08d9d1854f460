import numpy as np
import pytest

from ristoolkit.floquet import ETA0, make_scenario
from ristoolkit.impedance import (z1_cotangent, z2_geometric_optics,
                                  z3_global_optimal)

FREQUENCY = 28e9
THETA_R = np.deg2rad(70.0)
COS_R = np.cos(THETA_R)


@pytest.fixture(scope='session')
def eta0():
    return ETA0


@pytest.fixture(scope='session')
def scenario():
    """28 GHz, normal incidence, 70 degree design, N = 30, 5D x 5D."""
    return make_scenario(FREQUENCY, 0.0, THETA_R, truncation=30)


@pytest.fixture(scope='session')
def oblique_scenario():
    return make_scenario(FREQUENCY, np.deg2rad(20.0), np.deg2rad(-45.0),
                         truncation=20)


@pytest.fixture(scope='session')
def z1(scenario):
    return z1_cotangent(scenario)


@pytest.fixture(scope='session')
def z2(scenario):
    return z2_geometric_optics(scenario)


@pytest.fixture(scope='session')
def z3(scenario):
    return z3_global_optimal(scenario)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
