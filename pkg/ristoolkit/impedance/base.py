"""Periodic surface-impedance profiles and their Fourier spectra.

Convention: ``Z_s(y) = sum_p z_p exp(-j 2 pi p y / D)``.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from ristoolkit.errors import (FourierConsistencyError, GeometryMismatch,
                               MissingCoefficient, NonFiniteSample)
from ristoolkit.floquet.geometry import ScatterScenario

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Analytic spectra must match the DFT to this fraction of |Z0|.
ANALYTIC_CONSISTENCY_RTOL = 1e-6
MIN_DEFAULT_GRID = 4096


class ProfileKind(str, Enum):
    COTANGENT = 'Cotangent'
    GEOMETRIC_OPTICS = 'GeometricOptics'
    GLOBAL_OPTIMAL = 'GlobalOptimal'
    TABULATED = 'Tabulated'
    MODE_SYNTHESIZED = 'ModeSynthesized'
    UNIFORM = 'Uniform'


class Estimation(str, Enum):
    ANALYTIC = 'Analytic'
    NUMERIC_DFT = 'NumericDFT'


@dataclass(frozen=True)
class ScenarioLink:
    """The scenario parameters a profile was built for."""

    theta_i: float
    theta_r: float
    wavenumber: float
    period: float
    eta0: float

    @classmethod
    def from_scenario(cls, scenario: ScatterScenario) -> 'ScenarioLink':
        return cls(
            theta_i=scenario.theta_i,
            theta_r=scenario.theta_r,
            wavenumber=scenario.wavenumber,
            period=scenario.period,
            eta0=scenario.eta0,
        )

    @property
    def steering_sign(self) -> int:
        return 1 if np.sin(self.theta_r) > np.sin(self.theta_i) else -1


class ImpedanceProfile(ABC):
    """Base class of every periodic impedance profile ``Z_s(y)``.

    Subclasses implement :meth:`_evaluate` on an array of positions already
    reduced to one period, ``u = (y mod D) / D`` in ``[0, 1)``, which makes
    every profile exactly D-periodic.

    Args:
        period (float): Spatial period D in meters.
        link (ScenarioLink, optional): Scenario the profile was built for.
    """

    kind: ProfileKind

    def __init__(self, period: float, link: Optional[ScenarioLink] = None):
        if not period > 0:
            raise ValueError(f'period must be positive, got {period}')
        self.period = float(period)
        self.link = link

    @property
    def samples(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """(y, Z) samples backing a tabulated profile."""
        return None

    @property
    def prescribed_modes(self) -> Optional[Mapping[int, complex]]:
        """Modal amplitudes a synthesized profile was built from."""
        return None

    @property
    def reference_impedance(self) -> float:
        """Scale used for relative tolerances (``eta0 / cos(theta_i)``)."""
        if self.link is not None:
            return self.link.eta0 / np.cos(self.link.theta_i)
        return 1.0

    @abstractmethod
    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Evaluate on reduced positions ``u`` in ``[0, 1)``."""

    def evaluate(self, y: ArrayLike) -> Union[complex, np.ndarray]:
        """Evaluate ``Z_s(y)`` in ohms; vectorized over numpy arrays."""
        y_arr = np.asarray(y, dtype=float)
        u = np.mod(y_arr, self.period) / self.period
        u = np.where(u >= 1.0, 0.0, u)
        values = np.asarray(self._evaluate(np.atleast_1d(u)), dtype=complex)
        values = values.reshape(y_arr.shape)
        if values.ndim == 0:
            return complex(values)
        return values

    __call__ = evaluate

    def sample_points(self, grid_size: int) -> np.ndarray:
        """Half-step offset uniform grid over one period; never hits y = mD."""
        return (np.arange(grid_size) + 0.5) * self.period / grid_size

    def sample_period(self, grid_size: int = MIN_DEFAULT_GRID):
        y = self.sample_points(grid_size)
        return y, self.evaluate(y)

    def is_reactive(self, grid_size: int = MIN_DEFAULT_GRID,
                    rtol: float = 1e-12) -> bool:
        """True when ``Re Z_s`` vanishes on the audit grid."""
        _, z = self.sample_period(grid_size)
        scale = max(np.max(np.abs(z)), self.reference_impedance)
        return bool(np.max(np.abs(z.real)) <= rtol * scale)

    def passivity_margin(self, grid_size: int = MIN_DEFAULT_GRID) -> float:
        """Minimum of ``Re Z_s`` over the audit grid (>= 0 means passive)."""
        _, z = self.sample_period(grid_size)
        return float(np.min(z.real))

    def exact_spectrum(self, max_order: int) -> Optional[np.ndarray]:
        """Closed-form ``z_p`` for ``|p| <= max_order`` that needs no
        validation, or None."""
        return None

    def principal_value_spectrum(self,
                                 max_order: int) -> Optional[np.ndarray]:
        """Closed-form ``z_p`` that must be checked against the DFT before
        use, or None."""
        return None

    def check_period(self, scenario: ScatterScenario) -> None:
        if abs(self.period - scenario.period) > 1e-12 * scenario.period:
            raise GeometryMismatch(
                f'profile period {self.period:.9e} m differs from scenario '
                f'period {scenario.period:.9e} m')

    def __repr__(self) -> str:
        return f'{type(self).__name__}(kind={self.kind.value}, D={self.period:.6g})'


@dataclass(frozen=True)
class FourierImpedance:
    """Fourier coefficients ``z_p`` for ``p = -P..P``."""

    coefficients: np.ndarray
    period: float
    source_kind: ProfileKind
    estimation: Estimation

    @property
    def max_order(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def coefficient(self, p: int) -> complex:
        P = self.max_order
        if abs(p) > P:
            raise MissingCoefficient(
                f'z_{p} is not available (|p| <= {P} computed)')
        return complex(self.coefficients[p + P])

    __getitem__ = coefficient

    def as_dict(self) -> Dict[int, complex]:
        P = self.max_order
        return {p: complex(self.coefficients[p + P]) for p in range(-P, P + 1)}

    def reconstruct(self, y: ArrayLike) -> np.ndarray:
        """Evaluate the truncated series at ``y``."""
        P = self.max_order
        orders = np.arange(-P, P + 1)
        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        phase = np.exp(-2j * np.pi * np.outer(y_arr, orders) / self.period)
        return phase @ self.coefficients


def default_grid_size(max_order: int) -> int:
    return max(MIN_DEFAULT_GRID, 8 * max_order)


def _dft_coefficients(profile: ImpedanceProfile, max_order: int,
                      grid_size: int) -> np.ndarray:
    y, z = profile.sample_period(grid_size)
    if not np.all(np.isfinite(z)):
        bad = y[~np.isfinite(z)][0]
        raise NonFiniteSample(
            f'{profile.kind.value} profile is not finite at y = {bad:.9e} m')
    # samples sit at (m + 1/2) D / M, hence the half-step phase factor
    spectrum = np.fft.ifft(z)
    orders = np.arange(-max_order, max_order + 1)
    return np.exp(1j * np.pi * orders / grid_size) * spectrum[orders % grid_size]


def fourier_coefficients(profile: ImpedanceProfile,
                         max_order: int,
                         grid_size: Optional[int] = None,
                         analytic: bool = False) -> FourierImpedance:
    """Fourier coefficients ``z_p``, ``|p| <= max_order``, of one period.

    Numeric coefficients come from a uniform DFT over one period sampled half
    a step away from ``y = 0``. Profiles with an exact closed-form spectrum
    (uniform impedance) skip the DFT. ``analytic=True`` selects the
    principal-value series of the cotangent profile, after checking it
    against the DFT to ``1e-6 |Z0|``.

    Args:
        profile (ImpedanceProfile): The profile.
        max_order (int): P, highest retained order.
        grid_size (int, optional): DFT size. Defaults to ``max(4096, 8P)``.
        analytic (bool): Use the validated closed-form series.

    Returns:
        FourierImpedance: The coefficients.
    """
    if max_order < 0:
        raise ValueError(f'max_order must be >= 0, got {max_order}')
    grid_size = default_grid_size(max_order) if grid_size is None else int(
        grid_size)
    if grid_size < 4 * max_order + 2:
        raise ValueError(
            f'grid_size={grid_size} is below 4P+2={4 * max_order + 2}')

    exact = profile.exact_spectrum(max_order)
    if exact is not None:
        return FourierImpedance(exact, profile.period, profile.kind,
                                Estimation.ANALYTIC)

    numeric = _dft_coefficients(profile, max_order, grid_size)
    if not analytic:
        return FourierImpedance(numeric, profile.period, profile.kind,
                                Estimation.NUMERIC_DFT)

    closed_form = profile.principal_value_spectrum(max_order)
    if closed_form is None:
        raise ValueError(
            f'{profile.kind.value} profile has no analytic Fourier series')
    delta = float(np.max(np.abs(closed_form - numeric)))
    bound = ANALYTIC_CONSISTENCY_RTOL * profile.reference_impedance
    logger.debug('analytic vs DFT spectrum: max |dz_p| = %.3e (bound %.3e)',
                 delta, bound)
    if not delta < bound:
        raise FourierConsistencyError(
            f'analytic z_p deviates from the DFT by {delta:.3e} ohm '
            f'(bound {bound:.3e} ohm)')
    return FourierImpedance(closed_form, profile.period, profile.kind,
                            Estimation.ANALYTIC)
