"""Point-matching (collocation) reference solver.

Enforces the boundary condition ``E_t = Z_s H_t`` directly at points of one
period instead of through the Fourier coefficients of ``Z_s``:

    sum_n B_n Phi_n(y_m) (1 + Z_s(y_m) Y_n) = Z_s(y_m) Y_0 - 1,

solved in the least-squares sense. It shares only the Floquet ladder and the
profile evaluation with :mod:`ristoolkit.solver.mode_matching`.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ristoolkit.errors import RankDeficient
from ristoolkit.floquet.geometry import ScatterScenario, floquet_ladder
from ristoolkit.impedance.base import ImpedanceProfile
from ristoolkit.solver.mode_matching import ModalSolution

logger = logging.getLogger(__name__)


def default_num_points(truncation: int) -> int:
    return max(256, 4 * (2 * truncation + 1))


@dataclass(frozen=True)
class OracleReport:
    """Collocation amplitudes and their comparison with a reference solve.

    ``max_boundary_residual`` is the worst point residual
    ``|E_t - Z_s H_t| / (1 + |Z_s| / eta0)`` for a unit incident amplitude.
    ``comparison`` maps each propagating order to
    ``|B_n(oracle) - B_n(reference)|`` and is empty without a reference.
    """

    truncation: int
    num_points: int
    orders: np.ndarray
    amplitudes: np.ndarray
    max_boundary_residual: float
    rank: int
    comparison: Dict[int, float] = field(default_factory=dict)

    def amplitude(self, n: int) -> complex:
        return complex(self.amplitudes[n + self.truncation])

    @property
    def max_deviation(self) -> float:
        return max(self.comparison.values()) if self.comparison else 0.0


def collocation_solve(profile: ImpedanceProfile,
                      scenario: ScatterScenario,
                      truncation: Optional[int] = None,
                      num_points: Optional[int] = None,
                      reference: Optional[ModalSolution] = None
                      ) -> OracleReport:
    """Least-squares collocation estimate of ``B_-N..B_N``.

    Rows are weighted by ``1 / (1 + |Z_s(y_m)| / eta0)`` so points near an
    impedance pole do not dominate.

    Args:
        profile (ImpedanceProfile): Surface impedance.
        scenario (ScatterScenario): Geometry.
        truncation (int, optional): N. Defaults to the scenario's.
        num_points (int, optional): M >= 2(2N+1) half-offset points.
            Defaults to ``max(256, 4(2N+1))``.
        reference (ModalSolution, optional): Solution to compare with on the
            propagating orders.

    Returns:
        OracleReport: Amplitudes, residual and comparison.
    """
    N = scenario.truncation if truncation is None else int(truncation)
    unknowns = 2 * N + 1
    M = default_num_points(N) if num_points is None else int(num_points)
    if M < 2 * unknowns:
        raise ValueError(f'need at least {2 * unknowns} points, got {M}')
    profile.check_period(scenario)

    ladder = floquet_ladder(scenario, N)
    y = profile.sample_points(M)
    z = profile.evaluate(y)
    phase = np.exp(-2j * np.pi * np.outer(y, ladder.orders) / scenario.period)
    y0 = ladder.admittance[ladder.index_of(0)]
    weight = 1.0 / (1.0 + np.abs(z) / scenario.eta0)

    matrix = phase * (1.0 + np.outer(z, ladder.admittance))
    rhs = z * y0 - 1.0
    amplitudes, _, rank, _ = np.linalg.lstsq(matrix * weight[:, None],
                                             rhs * weight,
                                             rcond=None)
    if rank < unknowns:
        raise RankDeficient(
            f'collocation system has rank {rank} < {unknowns} unknowns')
    residual = float(np.max(np.abs(matrix @ amplitudes - rhs) * weight))
    logger.debug('collocation N=%d M=%d: residual %.3e', N, M, residual)

    comparison = {}
    if reference is not None:
        for n in ladder.orders[ladder.propagating]:
            n = int(n)
            if abs(n) <= reference.truncation:
                comparison[n] = float(
                    abs(amplitudes[n + N] - reference.amplitude(n)))
    return OracleReport(
        truncation=N,
        num_points=M,
        orders=ladder.orders,
        amplitudes=amplitudes,
        max_boundary_residual=residual,
        rank=int(rank),
        comparison=comparison,
    )
