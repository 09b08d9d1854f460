"""Far-field pattern of a finite rectangular patch of the periodic surface.

The patch spans ``|x| <= L_x``, ``|y| <= L_y``. Each propagating reflected
order radiates a beam towards its own angle ``theta_r,n`` whose width is set
by the aperture; the specular term carries the incident-wave contribution.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np

from ristoolkit.floquet.geometry import ScatterScenario, floquet_ladder
from ristoolkit.solver.mode_matching import ModalSolution

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 1801
MIN_GRID_SIZE = 181
# ">>" and "<<" in the far-field conditions
VALIDITY_MARGIN = 10.0
SINC_CONVENTION = 'literal'


def _sinc(x: np.ndarray) -> np.ndarray:
    """``sin(x) / x`` with the removable singularity at 0."""
    return np.sinc(x / np.pi)


def _propagating_terms(solution: ModalSolution, scenario: ScatterScenario):
    ladder = floquet_ladder(scenario.with_truncation(solution.truncation))
    keep = ladder.propagating
    return solution.amplitudes[keep], ladder.angles[keep]


def pattern_factor(solution: ModalSolution, scenario: ScatterScenario,
                   theta: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    """Angular factor ``F(theta)``; vectorized over ``theta`` in radians.

    ``F = (cos t - cos t_i) sinc(k L_y (sin t - sin t_i))
    + sum_n B_n (cos t + cos t_n) sinc(k L_y (sin t - sin t_n))``
    over the propagating orders, with ``sinc(x) = sin(x) / x``.
    """
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    k_ly = scenario.wavenumber * scenario.aperture_half_y
    amplitudes, angles = _propagating_terms(solution, scenario)

    sin_t = np.sin(theta_arr)[:, None]
    cos_t = np.cos(theta_arr)[:, None]
    incident = ((np.cos(theta_arr) - np.cos(scenario.theta_i)) *
                _sinc(k_ly * (np.sin(theta_arr) - np.sin(scenario.theta_i))))
    reflected = ((cos_t + np.cos(angles)) *
                 _sinc(k_ly * (sin_t - np.sin(angles)))) @ amplitudes
    factor = incident + reflected
    if np.ndim(theta) == 0:
        return complex(factor[0])
    return factor


def power_prefactor(scenario: ScatterScenario, A0: complex = 1.0) -> float:
    """``k^2 |A0|^2 S^2 / (32 pi^2 eta0)``."""
    return float(scenario.wavenumber**2 * abs(A0)**2 * scenario.area**2 /
                 (32.0 * np.pi**2 * scenario.eta0))


def radiated_power(solution: ModalSolution,
                   scenario: ScatterScenario,
                   A0: complex,
                   theta: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Radiated power per unit solid angle in W/sr."""
    if not np.isfinite(A0):
        raise ValueError(f'A0 must be finite, got {A0}')
    factor = pattern_factor(solution, scenario, theta)
    power = power_prefactor(scenario, A0) * np.abs(factor)**2
    if np.ndim(power) == 0:
        return float(power)
    return power


def main_lobe(scenario: ScatterScenario, angle: float) -> Tuple[float, float]:
    """First-null bounds of the beam steered to ``angle``, clipped to
    ``[-pi/2, pi/2]``."""
    half_width = np.pi / (scenario.wavenumber * scenario.aperture_half_y)
    lo = np.clip(np.sin(angle) - half_width, -1.0, 1.0)
    hi = np.clip(np.sin(angle) + half_width, -1.0, 1.0)
    return float(np.arcsin(lo)), float(np.arcsin(hi))


@dataclass(frozen=True)
class FarFieldPattern:
    """Sampled pattern over ``theta_grid`` (radians).

    ``metadata`` carries ``sinc_convention``, ``design_angle`` and the
    ``main_lobe`` bounds of the design beam.
    """

    theta_grid: np.ndarray
    factor: np.ndarray
    power: np.ndarray
    normalized: np.ndarray
    peak_angle: float
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def peak_index(self) -> int:
        return int(np.argmax(self.normalized))

    def normalized_db(self, floor_db: float = -120.0) -> np.ndarray:
        with np.errstate(divide='ignore'):
            db = 10.0 * np.log10(self.normalized)
        return np.maximum(db, floor_db)


def normalized_pattern(solution: ModalSolution,
                       scenario: ScatterScenario,
                       grid_size: int = DEFAULT_GRID_SIZE,
                       A0: complex = 1.0) -> FarFieldPattern:
    """``|F|^2 / max |F|^2`` on a uniform grid over [-90, 90] degrees."""
    if grid_size < MIN_GRID_SIZE:
        raise ValueError(
            f'grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}')
    theta = np.linspace(-np.pi / 2, np.pi / 2, grid_size)
    factor = pattern_factor(solution, scenario, theta)
    magnitude = np.abs(factor)**2
    peak = int(np.argmax(magnitude))
    if magnitude[peak] > 0:
        normalized = magnitude / magnitude[peak]
    else:
        normalized = np.zeros_like(magnitude)
    power = power_prefactor(scenario, A0) * magnitude
    logger.debug('pattern peak at %.3f deg on %d points',
                 np.rad2deg(theta[peak]), grid_size)
    return FarFieldPattern(
        theta_grid=theta,
        factor=factor,
        power=power,
        normalized=normalized,
        peak_angle=float(theta[peak]),
        metadata={
            'sinc_convention': SINC_CONVENTION,
            'design_angle': scenario.theta_r,
            'main_lobe': main_lobe(scenario, scenario.theta_r),
        },
    )


@dataclass(frozen=True)
class FarFieldValidity:
    valid: bool
    distance_over_wavelength: float
    distance_over_size: float
    wavelength_over_phase_error: float

    def __bool__(self) -> bool:
        return self.valid


def far_field_validity(scenario: ScatterScenario,
                       r: float) -> FarFieldValidity:
    """Check ``r >> lambda``, ``r >> L`` and ``L^2 / r << lambda`` with
    factor-10 margins, ``L = max(2 L_x, 2 L_y)``."""
    if not r > 0:
        raise ValueError(f'distance must be positive, got {r}')
    size = 2.0 * max(scenario.aperture_half_x, scenario.aperture_half_y)
    ratios = (
        r / scenario.wavelength,
        r / size,
        scenario.wavelength * r / size**2,
    )
    valid = all(ratio >= VALIDITY_MARGIN for ratio in ratios)
    return FarFieldValidity(valid, *ratios)
