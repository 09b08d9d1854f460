"""Closed-form impedance profiles for anomalous reflection.

All three redirecting profiles use the design phase factor
``Psi(y) = exp(-j k (sin theta_r - sin theta_i) y)``, which equals the phase
factor of the target Floquet order ``exp(-j 2 pi sigma y / D)``.
"""
import logging

import numpy as np

from ristoolkit.errors import (EvaluationAtPole, GeometryMismatch,
                               SingularProfile)
from ristoolkit.floquet.geometry import ScatterScenario

from .base import ImpedanceProfile, ProfileKind, ScenarioLink

logger = logging.getLogger(__name__)

# cos(theta_i) and cos(theta_r) closer than this (relative) are "equal"
COSINE_DEGENERACY_RTOL = 1e-12


def _design_period(scenario: ScatterScenario) -> float:
    sin_gap = abs(np.sin(scenario.theta_r) - np.sin(scenario.theta_i))
    design = scenario.wavelength / sin_gap
    if abs(design - scenario.period) > 1e-9 * design:
        raise GeometryMismatch(
            f'closed-form profiles need D = lambda / |sin(theta_r) - '
            f'sin(theta_i)| = {design:.9e} m, scenario has '
            f'{scenario.period:.9e} m')
    return scenario.period


class _DesignProfile(ImpedanceProfile):
    """Shared set-up of profiles defined by the design angles."""

    def __init__(self, scenario: ScatterScenario):
        super().__init__(_design_period(scenario),
                         ScenarioLink.from_scenario(scenario))
        self.sigma = scenario.steering_sign
        self.cos_i = float(np.cos(scenario.theta_i))
        self.cos_r = float(np.cos(scenario.theta_r))
        self.eta0 = scenario.eta0

    def psi(self, u: np.ndarray) -> np.ndarray:
        return np.exp(-2j * np.pi * self.sigma * u)

    def _check_distinct_cosines(self) -> None:
        if abs(self.cos_i - self.cos_r) <= COSINE_DEGENERACY_RTOL * self.cos_i:
            # Psi(0) = 1 zeroes the denominator when cos(theta_i) == cos(theta_r)
            raise SingularProfile(
                f'{self.kind.value} profile is singular for '
                'cos(theta_i) == cos(theta_r)', y=0.0)


class CotangentProfile(_DesignProfile):
    """Purely reactive profile ``j Z0 cot((k/2)(sin theta_i - sin theta_r) y)``
    with ``Z0 = eta0 / cos(theta_i)``.

    Poles sit at ``y = mD``. Its Fourier series, taken in the principal-value
    sense, is ``z_p = sigma Z0 sgn(p)``.
    """

    kind = ProfileKind.COTANGENT

    @property
    def z0(self) -> float:
        return self.eta0 / self.cos_i

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        if np.any(u == 0.0):
            raise EvaluationAtPole(
                'cotangent profile evaluated on a pole y = mD')
        # (k/2)(sin theta_i - sin theta_r) y = -sigma pi y / D
        return -self.sigma * 1j * self.z0 * (np.cos(np.pi * u) /
                                             np.sin(np.pi * u))

    def principal_value_spectrum(self, max_order: int) -> np.ndarray:
        orders = np.arange(-max_order, max_order + 1)
        return (self.sigma * self.z0 * np.sign(orders)).astype(complex)


class GeometricOpticsProfile(_DesignProfile):
    """Locally-specular profile ``eta0 (1 + Psi) / (cos theta_i - Psi cos
    theta_r)``."""

    kind = ProfileKind.GEOMETRIC_OPTICS

    def __init__(self, scenario: ScatterScenario):
        super().__init__(scenario)
        self._check_distinct_cosines()

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        psi = self.psi(u)
        return self.eta0 * (1.0 + psi) / (self.cos_i - psi * self.cos_r)


class GlobalOptimalProfile(_DesignProfile):
    """Profile reflecting all power into the target order.

    ``eta0 / sqrt(ci cr) * (sqrt(cr) + sqrt(ci) Psi) / (sqrt(ci) - sqrt(cr)
    Psi)``, with ``ci = cos(theta_i)`` and ``cr = cos(theta_r)``.
    """

    kind = ProfileKind.GLOBAL_OPTIMAL

    def __init__(self, scenario: ScatterScenario):
        super().__init__(scenario)
        self._check_distinct_cosines()

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        psi = self.psi(u)
        root_i = np.sqrt(self.cos_i)
        root_r = np.sqrt(self.cos_r)
        return (self.eta0 / (root_i * root_r) * (root_r + root_i * psi) /
                (root_i - root_r * psi))


class UniformProfile(ImpedanceProfile):
    """Constant impedance. ``UniformProfile(D, 0)`` is a perfect conductor."""

    kind = ProfileKind.UNIFORM

    def __init__(self, period: float, value: complex, link=None):
        super().__init__(period, link)
        value = complex(value)
        if not np.isfinite(value):
            raise ValueError(f'uniform impedance must be finite, got {value}')
        self.value = value

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        return np.full(u.shape, self.value, dtype=complex)

    def exact_spectrum(self, max_order: int) -> np.ndarray:
        coefficients = np.zeros(2 * max_order + 1, dtype=complex)
        coefficients[max_order] = self.value
        return coefficients


def z1_cotangent(scenario: ScatterScenario) -> CotangentProfile:
    return CotangentProfile(scenario)


def z2_geometric_optics(scenario: ScatterScenario) -> GeometricOpticsProfile:
    return GeometricOpticsProfile(scenario)


def z3_global_optimal(scenario: ScatterScenario) -> GlobalOptimalProfile:
    return GlobalOptimalProfile(scenario)


def uniform_impedance(scenario: ScatterScenario,
                      value: complex) -> UniformProfile:
    return UniformProfile(scenario.period, value,
                          ScenarioLink.from_scenario(scenario))


def pec(scenario: ScatterScenario) -> UniformProfile:
    return uniform_impedance(scenario, 0.0)


def matched_impedance(scenario: ScatterScenario) -> UniformProfile:
    """``eta0 / cos(theta_i)``: absorbs the specular order completely."""
    return uniform_impedance(scenario,
                             scenario.eta0 / np.cos(scenario.theta_i))
