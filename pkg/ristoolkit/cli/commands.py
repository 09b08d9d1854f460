"""Subcommands. Each takes a validated :class:`RunConfig` and returns the
process exit code; library errors propagate to :mod:`ristoolkit.cli.main`."""
import logging
import os
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from ristoolkit.analysis.far_field import normalized_pattern
from ristoolkit.analysis.power import efficiency_sweep, power_budget
from ristoolkit.errors import ConfigError, RISToolkitError
from ristoolkit.floquet.geometry import (ScatterScenario, make_scenario,
                                         propagating_indices)
from ristoolkit.impedance.base import ImpedanceProfile
from ristoolkit.impedance.profiles import (pec, uniform_impedance,
                                           z1_cotangent, z2_geometric_optics,
                                           z3_global_optimal)
from ristoolkit.impedance.synthesis import synthesize_from_modes
from ristoolkit.impedance.tabulated import format_table, read_table
from ristoolkit.solver.mode_matching import solve
from ristoolkit.utils.logger import get_outdir
from ristoolkit.utils.progress import track_progress
from ristoolkit.utils.timer import Timer
from ristoolkit.verification.suite import run_invariant_suite

from . import io
from .args import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_FAILURE = 3

DESIGN_TABLE_POINTS = 4096

CLOSED_FORMS = {
    'z1': z1_cotangent,
    'z2': z2_geometric_optics,
    'z3': z3_global_optimal,
    'pec': pec,
}


def build_scenario(config: RunConfig,
                   period: Optional[float] = None) -> ScatterScenario:
    s = config.scenario
    return make_scenario(s.frequency_ghz * 1e9,
                         np.deg2rad(s.theta_i_deg),
                         np.deg2rad(s.theta_r_deg),
                         truncation=s.truncation,
                         periods_per_side=s.periods_per_side,
                         period=period)


def build_problem(config: RunConfig
                  ) -> Tuple[ImpedanceProfile, ScatterScenario]:
    """Profile and matching scenario. A tabulated profile brings its own
    period. Values the library rejects are reported as configuration
    errors."""
    try:
        return _build_problem(config)
    except ValueError as e:
        raise ConfigError(str(e), f'--profile {config.profile.kind}') from e


def _build_problem(config: RunConfig
                   ) -> Tuple[ImpedanceProfile, ScatterScenario]:
    p = config.profile
    if p.kind == 'tabulated':
        profile = read_table(p.table)
        return profile, build_scenario(config, period=profile.period)
    scenario = build_scenario(config)
    if p.kind in CLOSED_FORMS:
        return CLOSED_FORMS[p.kind](scenario), scenario
    if p.kind == 'uniform':
        return uniform_impedance(scenario, p.impedance), scenario
    return synthesize_from_modes(scenario, p.modes), scenario


def _prepare_output(path: Optional[str]) -> None:
    if path:
        parent = os.path.dirname(os.path.abspath(path))
        get_outdir(parent)


def cmd_solve(config: RunConfig) -> int:
    """Reflected amplitudes and power fractions of every retained order."""
    profile, scenario = build_problem(config)
    with Timer() as timer:
        solution = solve(profile, scenario,
                         grid_size=config.scenario.fourier_grid,
                         analytic=config.profile.analytic)
        budget = power_budget(solution, scenario)
    logger.info(
        'solved %s in %.3f s: efficiency %.6f, total reflected %.6f, '
        'residual %.3e', profile.kind.value, timer.elapsed, budget.efficiency,
        budget.total_reflected, solution.diagnostics.residual_norm)
    summary = [
        f'target_index = {budget.target_index}',
        f'efficiency = {io.fmt(budget.efficiency)}',
        f'total_reflected = {io.fmt(budget.total_reflected)}',
        f'surface_net = {io.fmt(budget.surface_net)}',
        f'condition_estimate = {io.fmt(solution.diagnostics.condition_estimate)}',
        f'residual_norm = {io.fmt(solution.diagnostics.residual_norm)}',
        f'grazing_orders = {solution.diagnostics.grazing_warnings}',
    ]
    _prepare_output(config.output.path)
    with io.open_output(config.output.path) as stream:
        io.write_csv(stream, io.header_lines(config, summary),
                     io.HARMONICS_COLUMNS,
                     io.harmonic_rows(solution, scenario, budget))
    return EXIT_OK


def cmd_pattern(config: RunConfig) -> int:
    """Normalized far-field pattern over [-90, 90] degrees."""
    profile, scenario = build_problem(config)
    with Timer() as timer:
        solution = solve(profile, scenario,
                         grid_size=config.scenario.fourier_grid,
                         analytic=config.profile.analytic)
        pattern = normalized_pattern(solution, scenario,
                                     config.scenario.grid_size)
    lobe = pattern.metadata['main_lobe']
    logger.info('pattern of %s in %.3f s: peak at %.2f deg',
                profile.kind.value, timer.elapsed,
                np.rad2deg(pattern.peak_angle))
    summary = [
        f'peak_angle_deg = {io.fmt(np.rad2deg(pattern.peak_angle))}',
        f'design_angle_deg = {io.fmt(np.rad2deg(scenario.theta_r))}',
        f'main_lobe_deg = {io.fmt(np.rad2deg(lobe[0]))}, '
        f'{io.fmt(np.rad2deg(lobe[1]))}',
        f'sinc_convention = {pattern.metadata["sinc_convention"]}',
    ]
    _prepare_output(config.output.path)
    with io.open_output(config.output.path) as stream:
        io.write_csv(stream, io.header_lines(config, summary),
                     io.PATTERN_COLUMNS, io.pattern_rows(pattern, scenario))
    return EXIT_OK


def _sweep_point(scenario: ScatterScenario, profile: ImpedanceProfile,
                 grid_size: Optional[int],
                 analytic: bool) -> Tuple[float, float, float, Optional[str]]:
    try:
        solution = solve(profile, scenario, grid_size=grid_size,
                         analytic=analytic)
        budget = power_budget(solution, scenario)
    except RISToolkitError as e:
        logger.warning('sweep point failed: %s', e)
        nan = float('nan')
        return nan, nan, nan, f'{e.category}: {e.message}'
    except ValueError as e:
        logger.warning('sweep point rejected: %s', e)
        nan = float('nan')
        return nan, nan, nan, f'ValueError: {e}'
    return (budget.efficiency, budget.total_reflected,
            solution.diagnostics.residual_norm, None)


def _solve_task(task, grid_size, analytic):
    scenario, profile = task
    return _sweep_point(scenario, profile, grid_size, analytic)


def _sweep_scenario(base: ScatterScenario, variable: str, value: float):
    """Scenario of one N or frequency sweep point, or the reason it is
    invalid."""
    try:
        if variable == 'N':
            if value != int(value):
                raise ValueError(f'truncation must be an integer, got {value}')
            return base.with_truncation(int(value))
        return base.at_frequency(value * 1e9)
    except (ValueError, RISToolkitError) as e:
        return str(e)


def cmd_sweep(config: RunConfig) -> int:
    """Efficiency, total reflected power and residual per sweep point.

    Failing points are recorded on their rows; the exit code is nonzero only
    when every point fails.
    """
    variable = config.sweep.variable
    values = list(config.sweep.values)
    jobs, progress = config.output.jobs, config.output.progress

    if variable == 'theta_r_deg':
        kind = config.profile.kind
        if kind not in CLOSED_FORMS:
            raise ConfigError(
                'theta_r sweeps need a z1, z2, z3 or pec profile',
                '--sweep-variable')
        template = build_scenario(config)
        rows = efficiency_sweep(CLOSED_FORMS[kind], template,
                                np.deg2rad(values), nproc=jobs,
                                show_progress=progress)
        table = io.efficiency_rows(rows)
        errors = [r.error for r in rows]
    else:
        profile, base = build_problem(config)
        tasks: List = []
        errors = [None] * len(values)
        for i, value in enumerate(values):
            scenario = _sweep_scenario(base, variable, value)
            if isinstance(scenario, str):
                errors[i] = f'ValueError: {scenario}'
                tasks.append(None)
            else:
                tasks.append((scenario, profile))
        runnable = [t for t in tasks if t is not None]
        func = partial(_solve_task,
                       grid_size=config.scenario.fourier_grid,
                       analytic=config.profile.analytic)
        results = iter(track_progress(func, runnable, nproc=jobs,
                                      show_progress=progress,
                                      desc=f'{variable} sweep'))
        efficiency, total, residual = [], [], []
        nan = float('nan')
        for i, task in enumerate(tasks):
            e, t, r, err = (nan, nan, nan, errors[i]) if task is None else next(
                results)
            efficiency.append(e)
            total.append(t)
            residual.append(r)
            errors[i] = err
        table = io.sweep_rows(values, efficiency, total, residual, errors)

    failed = sum(err is not None for err in errors)
    summary = [f'sweep_variable = {variable}', f'failed_points = {failed}']
    _prepare_output(config.output.path)
    with io.open_output(config.output.path) as stream:
        io.write_csv(stream, io.header_lines(config, summary),
                     io.SWEEP_COLUMNS, table)
    if failed == len(values):
        logger.error('every sweep point failed')
        return EXIT_NUMERIC_FAILURE
    return EXIT_OK


def _round_trip_path(path: str) -> str:
    root, _ = os.path.splitext(path)
    return root + '_roundtrip.csv'


def cmd_design(config: RunConfig) -> int:
    """Synthesize the impedance for the prescribed modes and write it as a
    table, then solve it again and report prescribed against recovered
    amplitudes (``<output>_roundtrip.csv``)."""
    modes = config.profile.modes
    if not modes:
        raise ConfigError('design needs prescribed modes', '--modes')
    scenario = build_scenario(config)
    profile = synthesize_from_modes(scenario, modes)
    points = config.scenario.fourier_grid or DESIGN_TABLE_POINTS
    y, z = profile.sample_period(points)

    solution = solve(profile, scenario, grid_size=config.scenario.fourier_grid)
    kept = set(modes) | set(propagating_indices(scenario))
    recovered = {n: b for n, b in solution.as_dict().items() if n in kept}
    worst = max(abs(recovered.get(n, 0.0) - b) for n, b in modes.items())
    logger.info('design round trip: max |B_n - prescribed| = %.3e', worst)

    header = io.header_lines(config)
    path = config.output.path
    _prepare_output(path)
    with io.open_output(path) as stream:
        stream.write(format_table(y, z, profile.period, header))
    if path is None:
        logger.info('round trip not written (table on stdout): %d orders, '
                    'max_abs_error = %s', len(recovered), io.fmt(worst))
        return EXIT_OK
    with io.open_output(_round_trip_path(path)) as stream:
        io.write_csv(stream, header + [f'max_abs_error = {io.fmt(worst)}'],
                     io.DESIGN_COLUMNS, io.design_rows(modes, recovered))
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """Run the invariant suite; exit 1 when any check fails."""
    scenario = build_scenario(config)
    with Timer() as timer:
        report = run_invariant_suite(scenario,
                                     config.verify.tolerance_scale,
                                     nproc=config.output.jobs,
                                     show_progress=config.output.progress)
    failed = len(report.failures)
    logger.info('%d checks in %.2f s, %d failed', len(report.checks),
                timer.elapsed, failed)
    summary = [f'checks = {len(report.checks)}', f'failed = {failed}']
    _prepare_output(config.output.path)
    with io.open_output(config.output.path) as stream:
        io.write_csv(stream, io.header_lines(config, summary),
                     io.SUITE_COLUMNS, io.suite_rows(report))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    'solve': cmd_solve,
    'pattern': cmd_pattern,
    'sweep': cmd_sweep,
    'design': cmd_design,
    'verify': cmd_verify,
}
