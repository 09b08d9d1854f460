"""Scattering scenario and the Floquet harmonic ladder of a 1-D periodic
impedance surface.

The surface lies in the xy-plane, is periodic along y with period D and is
illuminated by a TE (x-polarized) plane wave travelling in the yz-plane. The
reflected field is a superposition of Floquet harmonics with tangential
wavenumbers ``k_y,n = k sin(theta_i) + 2 pi n / D``.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0, mu_0

from ristoolkit.errors import (DegenerateGeometry, GeometryMismatch,
                               InvalidAngle)
from ristoolkit.utils.warning import grazing_warning, truncation_warning

logger = logging.getLogger(__name__)

ETA0 = float(np.sqrt(mu_0 / epsilon_0))

# |k_y,n| / k within this of 1 is treated as grazing (k_z = 0).
GRAZING_RTOL = 1e-12
MAX_HARMONIC_ORDER = 100_000


class ModeClass(str, Enum):
    PROPAGATING = 'Propagating'
    EVANESCENT = 'Evanescent'


@dataclass(frozen=True)
class ScatterScenario:
    """Global problem definition.

    Angles are in radians, lengths in meters, frequency in hertz.

    Args:
        frequency (float): Operating frequency.
        theta_i (float): Design (and operating) incidence angle.
        theta_r (float): Design reflection angle.
        wavelength (float): ``c / frequency``.
        wavenumber (float): ``2 pi / wavelength``.
        period (float): Spatial period D of the surface.
        truncation (int): Number N of harmonics kept on each side of n = 0.
        aperture_half_x (float): L_x, half the surface size along x.
        aperture_half_y (float): L_y, half the surface size along y.
        eta0 (float): Free-space wave impedance.
    """

    frequency: float
    theta_i: float
    theta_r: float
    wavelength: float
    wavenumber: float
    period: float
    truncation: int
    aperture_half_x: float
    aperture_half_y: float
    eta0: float = ETA0

    @property
    def area(self) -> float:
        """S = 4 L_x L_y."""
        return 4.0 * self.aperture_half_x * self.aperture_half_y

    @property
    def steering_sign(self) -> int:
        """+1 when the design reflection angle exceeds the incidence angle."""
        return 1 if np.sin(self.theta_r) > np.sin(self.theta_i) else -1

    @property
    def target_index(self) -> int:
        """Floquet order that carries the design reflection."""
        return self.steering_sign

    @property
    def orders(self) -> np.ndarray:
        """Retained harmonic orders ``-N..N``."""
        return np.arange(-self.truncation, self.truncation + 1)

    def with_truncation(self, truncation: int) -> 'ScatterScenario':
        if truncation < 0:
            raise ValueError(f'truncation must be >= 0, got {truncation}')
        return replace(self, truncation=int(truncation))

    def at_frequency(self, frequency: float) -> 'ScatterScenario':
        """Same fabricated surface (period, aperture, design angles) operated
        at another frequency."""
        if not frequency > 0:
            raise ValueError(f'frequency must be positive, got {frequency}')
        wavelength = SPEED_OF_LIGHT / frequency
        return replace(
            self,
            frequency=float(frequency),
            wavelength=wavelength,
            wavenumber=2.0 * np.pi / wavelength,
        )


@dataclass(frozen=True)
class FloquetHarmonic:
    index: int
    k_y: float
    k_z: complex
    mode_class: ModeClass
    angle: Optional[float]
    admittance: complex
    grazing: bool = False

    @property
    def propagating(self) -> bool:
        return self.mode_class is ModeClass.PROPAGATING


@dataclass(frozen=True)
class FloquetLadder:
    """Vectorized view of the harmonics ``-N..N`` of a scenario.

    ``angles`` holds NaN for evanescent orders.
    """

    orders: np.ndarray
    k_y: np.ndarray
    k_z: np.ndarray
    admittance: np.ndarray
    propagating: np.ndarray
    grazing: np.ndarray
    angles: np.ndarray

    def index_of(self, n: int) -> int:
        return int(n - self.orders[0])


def _check_angle(name: str, theta: float) -> None:
    if not np.isfinite(theta) or abs(theta) >= np.pi / 2:
        raise InvalidAngle(
            f'{name} must lie strictly inside (-90, 90) degrees, '
            f'got {np.rad2deg(theta):.6g} deg')


def make_scenario(frequency: float,
                  theta_i: float,
                  theta_r: float,
                  truncation: int = 30,
                  periods_per_side: float = 5.0,
                  period: Optional[float] = None) -> ScatterScenario:
    """Build the scenario for a surface redirecting ``theta_i`` to
    ``theta_r``.

    The period follows ``D = lambda / |sin(theta_r) - sin(theta_i)|`` unless
    ``period`` is given explicitly. The surface spans ``periods_per_side * D``
    along each side, so ``L_x = L_y = periods_per_side * D / 2``.

    Args:
        frequency (float): Frequency in hertz.
        theta_i (float): Incidence angle in radians.
        theta_r (float): Design reflection angle in radians.
        truncation (int): Truncation order N.
        periods_per_side (float): Surface size in periods.
        period (float, optional): Explicit period in meters.

    Returns:
        ScatterScenario: The scenario.
    """
    if not frequency > 0:
        raise ValueError(f'frequency must be positive, got {frequency}')
    if truncation < 0:
        raise ValueError(f'truncation must be >= 0, got {truncation}')
    if not periods_per_side > 0:
        raise ValueError(
            f'periods_per_side must be positive, got {periods_per_side}')
    _check_angle('theta_i', theta_i)
    _check_angle('theta_r', theta_r)

    wavelength = SPEED_OF_LIGHT / frequency
    wavenumber = 2.0 * np.pi / wavelength
    sin_gap = abs(np.sin(theta_r) - np.sin(theta_i))
    if sin_gap == 0.0:
        raise DegenerateGeometry(
            'sin(theta_i) == sin(theta_r): no finite period redirects the '
            'incident wave')
    derived = period is None
    if derived:
        period = wavelength / sin_gap
    elif not period > 0:
        raise ValueError(f'period must be positive, got {period}')

    half = periods_per_side * period / 2.0
    scenario = ScatterScenario(
        frequency=float(frequency),
        theta_i=float(theta_i),
        theta_r=float(theta_r),
        wavelength=wavelength,
        wavenumber=wavenumber,
        period=float(period),
        truncation=int(truncation),
        aperture_half_x=half,
        aperture_half_y=half,
    )
    if derived:
        check_design_phase(scenario)

    widest = max(abs(n) for n in propagating_indices(scenario))
    if truncation < widest:
        msg = (f'truncation N={truncation} drops propagating orders up to '
               f'|n|={widest}')
        logger.warning(msg)
        truncation_warning(msg)
    logger.debug('scenario: f=%.6g Hz, lambda=%.6g m, D=%.6g m, N=%d',
                 frequency, wavelength, period, truncation)
    return scenario


def check_design_phase(scenario: ScatterScenario) -> None:
    """Raise :class:`GeometryMismatch` unless the design phase
    ``Psi(y) = exp(-j k (sin theta_r - sin theta_i) y)`` coincides with the
    phase factor of the target order."""
    psi_rate = scenario.wavenumber * (np.sin(scenario.theta_r) -
                                      np.sin(scenario.theta_i))
    target_rate = 2.0 * np.pi * scenario.target_index / scenario.period
    if abs(psi_rate - target_rate) > 1e-12 * abs(psi_rate):
        raise GeometryMismatch(
            f'design phase gradient {psi_rate:.9e} rad/m does not match the '
            f'target order {scenario.target_index} ({target_rate:.9e} rad/m)')


def _classify(k_y: np.ndarray, k: float):
    """Return k_z, propagating mask and grazing mask for tangential
    wavenumbers ``k_y``."""
    ratio = np.abs(k_y) / k
    grazing = np.abs(ratio - 1.0) <= GRAZING_RTOL
    propagating = (ratio < 1.0) | grazing
    k_z = np.where(
        propagating,
        np.sqrt(np.clip(k * k - k_y * k_y, 0.0, None)) + 0j,
        1j * np.sqrt(np.clip(k_y * k_y - k * k, 0.0, None)),
    )
    k_z = np.where(grazing, 0j, k_z)
    return k_z, propagating, grazing


def floquet_ladder(scenario: ScatterScenario,
                   truncation: Optional[int] = None) -> FloquetLadder:
    """Harmonics ``-N..N`` (N defaults to the scenario truncation)."""
    n_max = scenario.truncation if truncation is None else int(truncation)
    orders = np.arange(-n_max, n_max + 1)
    k = scenario.wavenumber
    k_y = k * np.sin(scenario.theta_i) + 2.0 * np.pi * orders / scenario.period
    k_z, propagating, grazing = _classify(k_y, k)
    admittance = k_z / (scenario.eta0 * k)
    angles = np.full(orders.shape, np.nan)
    angles[propagating] = np.arcsin(np.clip(k_y[propagating] / k, -1.0, 1.0))
    angles[grazing] = np.copysign(np.pi / 2, k_y[grazing])
    if np.any(grazing):
        msg = (f'grazing Floquet orders {orders[grazing].tolist()} carry no '
               'normal power (Y_n = 0)')
        logger.warning(msg)
        grazing_warning(msg)
    return FloquetLadder(
        orders=orders,
        k_y=k_y,
        k_z=k_z,
        admittance=admittance,
        propagating=propagating,
        grazing=grazing,
        angles=angles,
    )


def harmonic(scenario: ScatterScenario, n: int) -> FloquetHarmonic:
    """Floquet harmonic of order ``n``.

    ``k_z`` is ``+sqrt(k^2 - k_y^2)`` for propagating orders and
    ``+j sqrt(k_y^2 - k^2)`` for evanescent ones, so evanescent fields always
    decay away from the surface.
    """
    if abs(n) > max(MAX_HARMONIC_ORDER, scenario.truncation):
        raise ValueError(f'harmonic order {n} is out of range')
    k = scenario.wavenumber
    k_y = k * np.sin(scenario.theta_i) + 2.0 * np.pi * n / scenario.period
    k_z, propagating, grazing = _classify(np.array([k_y]), k)
    k_z, propagating, grazing = complex(k_z[0]), bool(propagating[0]), bool(
        grazing[0])
    if grazing:
        angle = float(np.copysign(np.pi / 2, k_y))
        grazing_warning(f'Floquet order {n} is grazing (Y_n = 0)')
    elif propagating:
        angle = float(np.arcsin(np.clip(k_y / k, -1.0, 1.0)))
    else:
        angle = None
    return FloquetHarmonic(
        index=int(n),
        k_y=float(k_y),
        k_z=k_z,
        mode_class=ModeClass.PROPAGATING
        if propagating else ModeClass.EVANESCENT,
        angle=angle,
        admittance=k_z / (scenario.eta0 * k),
        grazing=grazing,
    )


def propagating_indices(scenario: ScatterScenario) -> List[int]:
    """All orders with ``|k_y,n| <= k``, ascending. Always contains 0."""
    k = scenario.wavenumber
    step = 2.0 * np.pi / scenario.period
    k_y0 = k * np.sin(scenario.theta_i)
    lo = int(np.floor((-k - k_y0) / step)) - 1
    hi = int(np.ceil((k - k_y0) / step)) + 1
    orders = np.arange(lo, hi + 1)
    _, propagating, _ = _classify(k_y0 + step * orders, k)
    return [int(n) for n in orders[propagating]]
