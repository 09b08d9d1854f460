from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ristoolkit.analysis import (far_field_validity, main_lobe,
                                 normalized_pattern, pattern_factor,
                                 power_prefactor, radiated_power)
from ristoolkit.impedance import pec
from ristoolkit.solver import solve

from .conftest import COS_R


@pytest.fixture(scope='module')
def pec_solution(scenario):
    return solve(pec(scenario), scenario)


@pytest.fixture(scope='module')
def z2_solution(z2, scenario):
    return solve(z2, scenario)


@pytest.fixture(scope='module')
def z3_solution(z3, scenario):
    return solve(z3, scenario)


def _local_maxima(pattern):
    n = pattern.normalized
    interior = np.arange(1, len(n) - 1)
    peaks = interior[(n[1:-1] >= n[:-2]) & (n[1:-1] >= n[2:])]
    return np.rad2deg(pattern.theta_grid[peaks])


def test_pec_pattern_factor(pec_solution, scenario):
    assert pattern_factor(pec_solution, scenario, 0.0) == pytest.approx(-2.0)
    theta = np.linspace(-1.5, 1.5, 31)
    assert_allclose(pattern_factor(pec_solution, scenario, theta),
                    pattern_factor(pec_solution, scenario, -theta),
                    atol=1e-12)


def test_scalar_and_vector_inputs(z3_solution, scenario):
    theta = np.array([0.1, 0.5, 1.2])
    vector = pattern_factor(z3_solution, scenario, theta)
    assert vector.shape == (3,)
    for t, f in zip(theta, vector):
        assert pattern_factor(z3_solution, scenario, t) == pytest.approx(f)
    assert isinstance(radiated_power(z3_solution, scenario, 1.0, 0.3), float)


def test_factor_at_design_angle(z3_solution, scenario):
    # every other beam has a null exactly at the design angle
    factor = pattern_factor(z3_solution, scenario, scenario.theta_r)
    assert factor == pytest.approx(2 * np.sqrt(COS_R), abs=1e-8)


def test_power_scaling(z3_solution, scenario):
    p1 = radiated_power(z3_solution, scenario, 1.0, scenario.theta_r)
    p2 = radiated_power(z3_solution, scenario, 2.0, scenario.theta_r)
    assert p2 == pytest.approx(4 * p1, rel=1e-12)
    wider = replace(scenario, aperture_half_x=2 * scenario.aperture_half_x)
    assert power_prefactor(wider) == pytest.approx(
        4 * power_prefactor(scenario), rel=1e-12)
    expected = (scenario.wavenumber**2 * scenario.area**2 /
                (32 * np.pi**2 * scenario.eta0))
    assert power_prefactor(scenario) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        radiated_power(z3_solution, scenario, np.nan, 0.0)


def test_global_optimal_outshines_geometric_optics(z2_solution, z3_solution,
                                                   scenario):
    p2 = radiated_power(z2_solution, scenario, 1.0, scenario.theta_r)
    p3 = radiated_power(z3_solution, scenario, 1.0, scenario.theta_r)
    assert p3 > p2


def test_pec_pattern_is_specular(pec_solution, scenario):
    pattern = normalized_pattern(pec_solution, scenario)
    assert pattern.peak_angle == pytest.approx(0.0, abs=1e-12)
    assert_allclose(pattern.normalized, pattern.normalized[::-1],
                    rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize('solution_name', ['z2_solution', 'z3_solution'])
def test_anomalous_beam_peak(solution_name, scenario, request):
    solution = request.getfixturevalue(solution_name)
    pattern = normalized_pattern(solution, scenario)
    assert pattern.normalized.max() == 1.0
    assert pattern.normalized[pattern.peak_index] == 1.0
    assert 60.0 <= np.rad2deg(pattern.peak_angle) <= 71.0
    lo, hi = pattern.metadata['main_lobe']
    assert lo <= pattern.peak_angle <= hi
    assert pattern.metadata['sinc_convention'] == 'literal'
    assert pattern.metadata['design_angle'] == scenario.theta_r


def test_grid_refinement_is_stable(z3_solution, scenario):
    coarse = normalized_pattern(z3_solution, scenario, grid_size=181)
    fine = normalized_pattern(z3_solution, scenario, grid_size=721)
    assert abs(np.rad2deg(coarse.peak_angle - fine.peak_angle)) <= 1.0 + 1e-9
    with pytest.raises(ValueError):
        normalized_pattern(z3_solution, scenario, grid_size=90)


def test_cotangent_lobes(z1, scenario):
    solution = solve(z1, scenario, analytic=True)
    pattern = normalized_pattern(solution, scenario)
    maxima = _local_maxima(pattern)
    for n in (-1, 0, 1):
        angle = np.arcsin(n * np.sin(scenario.theta_r))
        lo, hi = np.rad2deg(main_lobe(scenario, angle))
        assert np.any((maxima >= lo) & (maxima <= hi)), n


def test_normalized_db_floor(pec_solution, scenario):
    pattern = normalized_pattern(pec_solution, scenario)
    db = pattern.normalized_db(-30.0)
    assert db.max() == pytest.approx(0.0)
    assert db.min() >= -30.0


def test_main_lobe_is_clipped(scenario):
    lo, hi = main_lobe(scenario, scenario.theta_r)
    assert hi == pytest.approx(np.pi / 2)
    half = np.pi / (scenario.wavenumber * scenario.aperture_half_y)
    assert np.sin(lo) == pytest.approx(np.sin(scenario.theta_r) - half)


def test_far_field_validity(scenario):
    size = 2 * scenario.aperture_half_y
    assert far_field_validity(scenario, 1e6 * scenario.wavelength)
    assert not far_field_validity(scenario, size)
    marginal = far_field_validity(scenario, size**2 / scenario.wavelength)
    assert not marginal.valid
    assert marginal.wavelength_over_phase_error == pytest.approx(1.0)
    with pytest.raises(ValueError):
        far_field_validity(scenario, 0.0)
