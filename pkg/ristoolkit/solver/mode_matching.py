"""Mode-matching solution of the periodic impedance boundary condition.

Enforcing ``E_t = Z_s H_t`` harmonic by harmonic gives

    (I + Z_s Y_a) b = (Z_s Y_a - I) a,    b = Gamma a,

with ``Z_s`` the Toeplitz matrix of the impedance Fourier coefficients and
``Y_a`` the diagonal matrix of TE modal admittances.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ristoolkit.errors import (MissingCoefficient, RISToolkitError,
                               SingularSystem)
from ristoolkit.floquet.geometry import ScatterScenario, floquet_ladder
from ristoolkit.impedance.base import (FourierImpedance, ImpedanceProfile,
                                       fourier_coefficients)
from ristoolkit.utils.timer import Timer

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e14
BOUNDARY_POINTS = 512


@dataclass(frozen=True)
class SolveDiagnostics:
    condition_estimate: float
    residual_norm: float
    grazing_warnings: List[int] = field(default_factory=list)
    elapsed: float = 0.0


@dataclass(frozen=True)
class ModalSolution:
    """Reflected Floquet amplitudes ``B_n`` for ``|n| <= N`` under a unit
    incident amplitude on order 0."""

    truncation: int
    orders: np.ndarray
    amplitudes: np.ndarray
    diagnostics: SolveDiagnostics
    incident_index: int = 0

    def amplitude(self, n: int) -> complex:
        if abs(n) > self.truncation:
            raise KeyError(f'order {n} is outside |n| <= {self.truncation}')
        return complex(self.amplitudes[n + self.truncation])

    def as_dict(self) -> Dict[int, complex]:
        return {
            int(n): complex(b)
            for n, b in zip(self.orders, self.amplitudes)
        }


def toeplitz_matrix(fourier: FourierImpedance,
                    truncation: int,
                    missing_as_zero: bool = False) -> np.ndarray:
    """``(2N+1) x (2N+1)`` matrix whose entry (n, m) is ``z_{n-m}``.

    Needs ``z_p`` for ``|p| <= 2N``. Missing coefficients raise
    :class:`MissingCoefficient` unless ``missing_as_zero`` is set.
    """
    width = 2 * truncation
    available = fourier.max_order
    if available < width and not missing_as_zero:
        raise MissingCoefficient(
            f'N={truncation} needs z_p for |p| <= {width}, only |p| <= '
            f'{available} available')
    z = np.zeros(2 * width + 1, dtype=complex)
    keep = min(available, width)
    z[width - keep:width + keep + 1] = fourier.coefficients[
        available - keep:available + keep + 1]
    # z[width + p] holds z_p
    column = z[width:]
    row = z[width::-1]
    return scipy.linalg.toeplitz(column, row)


def admittance_matrix(scenario: ScatterScenario,
                      truncation: Optional[int] = None) -> np.ndarray:
    """``diag(Y_-N, ..., Y_N)``."""
    return np.diag(floquet_ladder(scenario, truncation).admittance)


def reflection_matrix(Zs: np.ndarray,
                      Ya: np.ndarray) -> Tuple[np.ndarray, float]:
    """``Gamma = (I + Zs Ya)^-1 (Zs Ya - I)`` by an LU solve.

    Returns:
        tuple[np.ndarray, float]: Gamma and the 2-norm condition estimate of
            ``I + Zs Ya``.
    """
    identity = np.eye(Zs.shape[0], dtype=complex)
    coupling = Zs @ Ya
    system = identity + coupling
    try:
        condition = float(np.linalg.cond(system))
    except np.linalg.LinAlgError as e:
        raise SingularSystem(f'condition estimate failed: {e}')
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise SingularSystem(
            f'I + Zs Ya is ill-conditioned (cond = {condition:.3e})')
    try:
        lu_piv = scipy.linalg.lu_factor(system, check_finite=True)
        gamma = scipy.linalg.lu_solve(lu_piv, coupling - identity)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SingularSystem(f'linear solve failed: {e}')
    logger.debug('reflection matrix %dx%d, cond = %.3e', *system.shape,
                 condition)
    return gamma, condition


def _residual(Zs: np.ndarray, Ya: np.ndarray, b: np.ndarray,
              a: np.ndarray) -> float:
    coupling = Zs @ Ya
    lhs = b + coupling @ b
    rhs = coupling @ a - a
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(a))


def _explain_singular(error: SingularSystem,
                      profile: ImpedanceProfile) -> SingularSystem:
    try:
        margin = profile.passivity_margin()
    except RISToolkitError:
        return error
    if margin >= 0:
        return error
    return SingularSystem(
        f'{error.message}; the {profile.kind.value} surface is active '
        f'(min Re Z_s = {margin:.3e} ohm), so the boundary-value problem '
        'has no unique solution and the fields are not determined')


def solve(profile: ImpedanceProfile,
          scenario: ScatterScenario,
          grid_size: Optional[int] = None,
          analytic: bool = False,
          fourier: Optional[FourierImpedance] = None) -> ModalSolution:
    """Reflected amplitudes of ``profile`` illuminated as in ``scenario``.

    Args:
        profile (ImpedanceProfile): Surface impedance.
        scenario (ScatterScenario): Geometry and truncation N.
        grid_size (int, optional): DFT size for the Fourier coefficients.
        analytic (bool): Use the validated closed-form spectrum if any.
        fourier (FourierImpedance, optional): Precomputed coefficients with
            ``|p| <= 2N``; skips :func:`fourier_coefficients`.

    Returns:
        ModalSolution: Amplitudes and diagnostics.
    """
    profile.check_period(scenario)
    N = scenario.truncation
    with Timer() as timer:
        if fourier is None:
            fourier = fourier_coefficients(profile, 2 * N, grid_size,
                                           analytic=analytic)
        ladder = floquet_ladder(scenario)
        Zs = toeplitz_matrix(fourier, N)
        Ya = np.diag(ladder.admittance)
        try:
            gamma, condition = reflection_matrix(Zs, Ya)
        except SingularSystem as e:
            raise _explain_singular(e, profile) from e
        a = np.zeros(2 * N + 1, dtype=complex)
        a[N] = 1.0
        b = gamma[:, N].copy()
        residual = _residual(Zs, Ya, b, a)
    logger.debug('solve %s N=%d: residual %.3e, cond %.3e, %.3f s',
                 profile.kind.value, N, residual, condition, timer.elapsed)
    return ModalSolution(
        truncation=N,
        orders=ladder.orders,
        amplitudes=b,
        diagnostics=SolveDiagnostics(
            condition_estimate=condition,
            residual_norm=residual,
            grazing_warnings=[int(n) for n in ladder.orders[ladder.grazing]],
            elapsed=timer.elapsed,
        ),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    truncation: int
    amplitudes: Dict[int, complex]
    residual_norm: float
    error: Optional[str] = None
    elapsed: float = 0.0
    boundary_error: float = float('nan')

    @property
    def ok(self) -> bool:
        return self.error is None


def convergence_sweep(profile: ImpedanceProfile,
                      scenario: ScatterScenario,
                      truncations: Sequence[int],
                      grid_size: Optional[int] = None) -> List[ConvergenceRow]:
    """One solve per N, amplitudes restricted to the propagating orders.

    Each row also carries the a-posteriori :func:`boundary_residual` at
    ``BOUNDARY_POINTS`` points. A failing solve is recorded on its row and the
    sweep continues.
    """
    truncations = [int(n) for n in truncations]
    if not truncations:
        raise ValueError('truncation list is empty')
    if any(b <= a for a, b in zip(truncations, truncations[1:])):
        raise ValueError(f'truncations must ascend, got {truncations}')
    if grid_size is None:
        # one grid for the whole sweep keeps rows comparable
        grid_size = max(4096, 16 * truncations[-1])
    rows = []
    timer = Timer()
    for N in truncations:
        scenario_n = scenario.with_truncation(N)
        try:
            solution = solve(profile, scenario_n, grid_size=grid_size)
        except RISToolkitError as e:
            logger.warning('N=%d failed: %s', N, e)
            rows.append(
                ConvergenceRow(N, {}, float('nan'),
                               f'{e.category}: {e.message}',
                               timer.since_last_check()))
            continue
        ladder = floquet_ladder(scenario_n)
        kept = ladder.orders[ladder.propagating]
        rows.append(
            ConvergenceRow(
                truncation=N,
                amplitudes={int(n): solution.amplitude(int(n)) for n in kept},
                residual_norm=solution.diagnostics.residual_norm,
                elapsed=timer.since_last_check(),
                boundary_error=boundary_residual(solution, profile, scenario_n,
                                                 BOUNDARY_POINTS),
            ))
        logger.debug('N=%d solved in %.3f s', N, rows[-1].elapsed)
    return rows


def boundary_residual(solution: ModalSolution,
                      profile: ImpedanceProfile,
                      scenario: ScatterScenario,
                      num_points: int = 1024) -> float:
    """A-posteriori boundary-condition error of ``solution``.

    Maximum over ``num_points`` half-offset points of
    ``|E_t - Z_s H_t| / (1 + |Z_s| / eta0)`` for a unit incident amplitude,
    with ``E_t = Phi_0 + sum B_n Phi_n`` and
    ``H_t = Y_0 Phi_0 - sum Y_n B_n Phi_n`` (common phase removed).
    """
    y = profile.sample_points(num_points)
    ladder = floquet_ladder(scenario.with_truncation(solution.truncation))
    phase = np.exp(-2j * np.pi * np.outer(y, solution.orders) /
                   scenario.period)
    n0 = ladder.index_of(0)
    e_t = 1.0 + phase @ solution.amplitudes
    h_t = ladder.admittance[n0] - phase @ (ladder.admittance *
                                           solution.amplitudes)
    z = profile.evaluate(y)
    return float(
        np.max(np.abs(e_t - z * h_t) / (1.0 + np.abs(z) / scenario.eta0)))
