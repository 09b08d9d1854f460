"""Impedance synthesis from prescribed reflected modal amplitudes."""
import logging
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ristoolkit.errors import SingularProfile
from ristoolkit.floquet.geometry import ScatterScenario, harmonic

from .base import ImpedanceProfile, ProfileKind, ScenarioLink

logger = logging.getLogger(__name__)

DEFAULT_FLOOR_FACTOR = 1e-9
DEFAULT_AUDIT_GRID = 4096


class ModeSynthesizedProfile(ImpedanceProfile):
    """Profile that reflects exactly the prescribed amplitudes ``B_n``.

    ``Z(y) = (1 + sum B_n Phi_n) / (cos(theta_i)/eta0 - sum Y_n B_n Phi_n)``
    with ``Phi_n(y) = exp(-j 2 pi n y / D)``, for an incident wave of unit
    amplitude.

    Args:
        scenario (ScatterScenario): Scenario the modes belong to.
        modes (Mapping[int, complex]): Prescribed ``B_n``.
        floor_factor (float): Denominators below ``floor_factor * cos(theta_i)
            / eta0`` anywhere on the audit grid are singular.
        audit_grid (int): Size of the audit grid.
    """

    kind = ProfileKind.MODE_SYNTHESIZED

    def __init__(self,
                 scenario: ScatterScenario,
                 modes: Mapping[int, complex],
                 floor_factor: float = DEFAULT_FLOOR_FACTOR,
                 audit_grid: int = DEFAULT_AUDIT_GRID):
        super().__init__(scenario.period, ScenarioLink.from_scenario(scenario))
        if not modes:
            raise ValueError('at least one modal amplitude is required')
        clean = {}
        for n, b in modes.items():
            if int(n) != n:
                raise ValueError(f'mode index must be an integer, got {n}')
            b = complex(b)
            if not np.isfinite(b):
                raise ValueError(f'B_{n} is not finite')
            clean[int(n)] = b
        self._modes = clean
        self.orders = np.array(sorted(clean))
        self.amplitudes = np.array([clean[n] for n in self.orders])
        self.admittances = np.array(
            [harmonic(scenario, int(n)).admittance for n in self.orders])
        self.cos_i = float(np.cos(scenario.theta_i))
        self.eta0 = scenario.eta0
        self.floor = floor_factor * self.cos_i / self.eta0
        self._audit(audit_grid)

    @property
    def prescribed_modes(self) -> Mapping[int, complex]:
        return MappingProxyType(self._modes)

    def _terms(self, u: np.ndarray):
        phase = np.exp(-2j * np.pi * np.outer(u, self.orders))
        numerator = 1.0 + phase @ self.amplitudes
        denominator = (self.cos_i / self.eta0 -
                       phase @ (self.admittances * self.amplitudes))
        return numerator, denominator

    def _audit(self, grid_size: int) -> None:
        # both the on-grid and half-step grids, so y = 0 is covered
        u = np.concatenate([np.arange(grid_size),
                            np.arange(grid_size) + 0.5]) / grid_size
        _, denominator = self._terms(u)
        magnitude = np.abs(denominator)
        worst = int(np.argmin(magnitude))
        if magnitude[worst] < self.floor:
            raise SingularProfile(
                f'synthesis denominator |{magnitude[worst]:.3e}| S is below '
                f'the floor {self.floor:.3e} S', y=float(u[worst] * self.period))
        logger.debug('synthesis denominator minimum %.3e S (floor %.3e S)',
                     magnitude[worst], self.floor)

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        numerator, denominator = self._terms(u)
        zero = denominator == 0
        if np.any(zero):
            raise SingularProfile('synthesis denominator vanishes',
                                  y=float(u[zero][0] * self.period))
        return numerator / denominator


def synthesize_from_modes(scenario: ScatterScenario,
                          modes: Mapping[int, complex],
                          floor_factor: float = DEFAULT_FLOOR_FACTOR
                          ) -> ModeSynthesizedProfile:
    """Impedance that produces the reflected amplitudes ``modes``."""
    return ModeSynthesizedProfile(scenario, modes, floor_factor=floor_factor)
