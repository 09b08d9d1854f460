"""Per-harmonic power budget of a modal solution.

The fraction of incident power carried by propagating order ``n`` is the
ratio of normal Poynting fluxes, ``p_n = |B_n|^2 cos(theta_r,n) /
cos(theta_i)``.
"""
import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ristoolkit.errors import RISToolkitError
from ristoolkit.floquet.geometry import (ScatterScenario, harmonic,
                                         make_scenario, propagating_indices)
from ristoolkit.impedance.base import ImpedanceProfile
from ristoolkit.solver.mode_matching import ModalSolution, solve
from ristoolkit.utils.progress import track_progress

logger = logging.getLogger(__name__)

ProfileFactory = Callable[[ScatterScenario], ImpedanceProfile]


@dataclass(frozen=True)
class PowerBudget:
    fractions: Dict[int, float]
    total_reflected: float
    surface_net: float
    target_index: int
    efficiency: float
    grazing: List[int] = field(default_factory=list)


def power_budget(solution: ModalSolution,
                 scenario: ScatterScenario) -> PowerBudget:
    """Split the incident power among the propagating orders.

    Orders beyond the truncation count as zero; grazing orders carry no
    normal flux and are flagged.
    """
    cos_i = np.cos(scenario.theta_i)
    fractions = {}
    grazing = []
    for n in propagating_indices(scenario):
        h = harmonic(scenario, n)
        if h.grazing:
            grazing.append(n)
            fractions[n] = 0.0
            continue
        if abs(n) > solution.truncation:
            fractions[n] = 0.0
            continue
        cos_n = h.k_z.real / scenario.wavenumber
        fractions[n] = float(abs(solution.amplitude(n))**2 * cos_n / cos_i)
    total = float(sum(fractions.values()))
    target = scenario.target_index
    return PowerBudget(
        fractions=fractions,
        total_reflected=total,
        surface_net=1.0 - total,
        target_index=target,
        efficiency=fractions.get(target, 0.0),
        grazing=grazing,
    )


def cotangent_target_efficiency(scenario: ScatterScenario) -> float:
    """Power the cotangent profile sends into the design order,
    ``4 cos(theta_i) cos(theta_r) / (cos(theta_i) + cos(theta_r))^2``."""
    cos_i = np.cos(scenario.theta_i)
    cos_r = np.cos(scenario.theta_r)
    return float(4.0 * cos_i * cos_r / (cos_i + cos_r)**2)


@dataclass(frozen=True)
class EfficiencyRow:
    theta_r: float
    efficiency: float
    total_reflected: float
    residual_norm: float = float('nan')
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _efficiency_row(theta_r: float, profile_factory: ProfileFactory,
                    template: ScatterScenario,
                    periods_per_side: float) -> EfficiencyRow:
    try:
        scenario = make_scenario(template.frequency,
                                 template.theta_i,
                                 theta_r,
                                 truncation=template.truncation,
                                 periods_per_side=periods_per_side)
        solution = solve(profile_factory(scenario), scenario)
        budget = power_budget(solution, scenario)
    except RISToolkitError as e:
        logger.warning('theta_r=%.4f deg failed: %s', np.rad2deg(theta_r), e)
        return EfficiencyRow(theta_r, float('nan'), float('nan'),
                             error=f'{e.category}: {e.message}')
    return EfficiencyRow(theta_r, budget.efficiency, budget.total_reflected,
                         solution.diagnostics.residual_norm)


def efficiency_sweep(profile_factory: ProfileFactory,
                     scenario_template: ScatterScenario,
                     theta_r_list: Sequence[float],
                     nproc: int = 1,
                     show_progress: bool = False) -> List[EfficiencyRow]:
    """Design efficiency versus steering angle.

    Every ``theta_r`` gets its own scenario (period re-derived, same
    frequency, incidence angle, truncation and size in periods as the
    template) and its own profile from ``profile_factory``. A failing row is
    recorded with its error and the sweep continues. ``profile_factory`` must
    be picklable when ``nproc > 1``.
    """
    periods_per_side = (2.0 * scenario_template.aperture_half_y /
                        scenario_template.period)
    func = partial(_efficiency_row,
                   profile_factory=profile_factory,
                   template=scenario_template,
                   periods_per_side=periods_per_side)
    return track_progress(func, [float(t) for t in theta_r_list],
                          nproc=nproc,
                          show_progress=show_progress,
                          desc='theta_r sweep')
