import numpy as np
import pytest
from numpy.testing import assert_allclose

from ristoolkit.errors import (GeometryMismatch, MissingCoefficient,
                               SingularSystem)
from ristoolkit.floquet import ETA0, floquet_ladder, make_scenario
from ristoolkit.impedance import (Estimation, FourierImpedance, ProfileKind,
                                  fourier_coefficients, load_tabulated,
                                  matched_impedance, pec, uniform_impedance,
                                  z1_cotangent, z2_geometric_optics,
                                  z3_global_optimal)
from ristoolkit.solver import (admittance_matrix, boundary_residual,
                               convergence_sweep, reflection_matrix, solve,
                               toeplitz_matrix)

from .conftest import COS_R, FREQUENCY


def _fourier(coefficients, period=1.0):
    return FourierImpedance(np.asarray(coefficients, dtype=complex), period,
                            ProfileKind.TABULATED, Estimation.NUMERIC_DFT)


def test_toeplitz_layout():
    # z_p = 10 p + 1j for p = -2..2
    fourier = _fourier([10 * p + 1j for p in range(-2, 3)])
    T = toeplitz_matrix(fourier, 1)
    expected = np.array([[1j, -10 + 1j, -20 + 1j],
                         [10 + 1j, 1j, -10 + 1j],
                         [20 + 1j, 10 + 1j, 1j]])
    assert_allclose(T, expected)


def test_toeplitz_missing_coefficients():
    fourier = _fourier([1.0, 2.0, 3.0])
    with pytest.raises(MissingCoefficient):
        toeplitz_matrix(fourier, 1)
    T = toeplitz_matrix(fourier, 1, missing_as_zero=True)
    assert T[2, 0] == 0 and T[0, 2] == 0
    assert T[1, 0] == 3.0 and T[0, 1] == 1.0


def test_toeplitz_of_constant_is_diagonal(scenario):
    fourier = fourier_coefficients(uniform_impedance(scenario, 5 - 2j), 8)
    assert_allclose(toeplitz_matrix(fourier, 4), (5 - 2j) * np.eye(9))


def test_toeplitz_of_real_profile_is_hermitian(scenario, rng):
    y = np.sort(rng.uniform(0, scenario.period, 40))
    profile = load_tabulated(scenario.period,
                             zip(y, ETA0 * rng.uniform(0.1, 2.0, 40)))
    T = toeplitz_matrix(fourier_coefficients(profile, 20), 10)
    assert_allclose(T, T.conj().T, atol=1e-12 * ETA0)


def test_admittance_matrix(scenario):
    Ya = admittance_matrix(scenario, 5)
    assert Ya.shape == (11, 11)
    diag = np.diag(Ya)
    assert diag[5] == pytest.approx(1 / ETA0)
    ladder = floquet_ladder(scenario, 5)
    assert np.all(diag[~ladder.propagating].real == 0)
    assert np.all(diag[~ladder.propagating].imag > 0)


def test_reflection_matrix_limits(scenario):
    Ya = admittance_matrix(scenario, 6)
    gamma, _ = reflection_matrix(np.zeros_like(Ya), Ya)
    assert_allclose(gamma, -np.eye(13), atol=1e-15)
    gamma, _ = reflection_matrix(np.diag(1 / np.diag(Ya)), Ya)
    assert_allclose(gamma, np.zeros((13, 13)), atol=1e-12)


def test_reflection_matrix_rejects_singular_system(scenario):
    Ya = admittance_matrix(scenario, 4)
    # 1 + Z Y_2 = 0 on the evanescent order n = 2
    Zs = np.eye(9, dtype=complex) * (-1 / Ya[6, 6])
    with pytest.raises(SingularSystem):
        reflection_matrix(Zs, Ya)


def test_pec_reflects_specularly(scenario):
    solution = solve(pec(scenario), scenario)
    assert solution.amplitude(0) == -1.0
    others = np.delete(solution.amplitudes, scenario.truncation)
    assert np.all(others == 0)


def test_matched_impedance_absorbs(scenario, oblique_scenario):
    for s in (scenario, oblique_scenario):
        solution = solve(matched_impedance(s), s)
        assert abs(solution.amplitude(0)) < 1e-12


def test_uniform_impedance_is_diagonal(rng):
    for _ in range(20):
        theta_i = rng.uniform(-1.2, 1.2)
        theta_r = rng.uniform(-1.2, 1.2)
        if abs(np.sin(theta_r) - np.sin(theta_i)) < 0.2:
            continue
        s = make_scenario(FREQUENCY, theta_i, theta_r, truncation=12)
        value = ETA0 * complex(rng.uniform(0.05, 2.0), rng.uniform(-2.0, 2.0))
        solution = solve(uniform_impedance(s, value), s)
        ladder = floquet_ladder(s)
        expected = np.zeros(25, dtype=complex)
        y0 = ladder.admittance[12]
        expected[12] = (value * y0 - 1) / (value * y0 + 1)
        assert_allclose(solution.amplitudes, expected, atol=1e-12)


def test_geometric_optics_redirects_unit_amplitude(z2, scenario):
    solution = solve(z2, scenario)
    assert solution.amplitude(1) == pytest.approx(1.0, abs=1e-6)
    others = np.delete(solution.amplitudes, scenario.truncation + 1)
    assert np.max(np.abs(others)) < 1e-6
    assert solution.diagnostics.residual_norm < 1e-9
    assert solution.diagnostics.grazing_warnings == []


def test_global_optimal_amplitude(z3, scenario):
    solution = solve(z3, scenario)
    assert solution.amplitude(1) == pytest.approx(1 / np.sqrt(COS_R), abs=1e-6)
    assert abs(solution.amplitude(1)) == pytest.approx(1.70991, abs=1e-5)
    assert abs(solution.amplitude(0)) < 1e-6
    assert abs(solution.amplitude(-1)) < 1e-6


def test_cotangent_target_amplitude(z1, scenario):
    solution = solve(z1, scenario, analytic=True)
    assert solution.amplitude(1) == pytest.approx(2 / (1 + COS_R), abs=1e-8)
    for n in (-1, 0, 1):
        assert abs(solution.amplitude(n))**2 > 0.01


def test_cotangent_numeric_and_analytic_agree(z1, scenario):
    numeric = solve(z1, scenario.with_truncation(10))
    analytic = solve(z1, scenario.with_truncation(10), analytic=True)
    assert_allclose(numeric.amplitudes, analytic.amplitudes, atol=1e-6)


def test_solution_accessors(z2, scenario):
    solution = solve(z2, scenario.with_truncation(3))
    assert list(solution.orders) == list(range(-3, 4))
    assert set(solution.as_dict()) == set(range(-3, 4))
    with pytest.raises(KeyError):
        solution.amplitude(4)
    assert solution.diagnostics.condition_estimate >= 1.0
    assert solution.diagnostics.elapsed >= 0.0


def test_precomputed_fourier_is_used(z3, scenario):
    s = scenario.with_truncation(5)
    fourier = fourier_coefficients(z3, 10)
    assert_allclose(solve(z3, s, fourier=fourier).amplitudes,
                    solve(z3, s).amplitudes, atol=1e-12)
    with pytest.raises(MissingCoefficient):
        solve(z3, s, fourier=fourier_coefficients(z3, 4))


def test_period_mismatch(z3):
    other = make_scenario(FREQUENCY, 0.0, np.deg2rad(50.0))
    with pytest.raises(GeometryMismatch):
        solve(z3, other)


def test_convergence_of_constant_impedance(scenario):
    profile = uniform_impedance(scenario, 0.7 * ETA0)
    rows = convergence_sweep(profile, scenario, [1, 5, 10, 20])
    values = [row.amplitudes[0] for row in rows]
    assert all(row.ok for row in rows)
    assert max(abs(v - values[0]) for v in values) <= 1e-15
    assert set(rows[-1].amplitudes) == {-1, 0, 1}


def test_convergence_of_geometric_optics(z2, scenario):
    rows = convergence_sweep(z2, scenario, [5, 10, 20])
    for row in rows:
        assert row.amplitudes[1] == pytest.approx(1.0, abs=1e-3)


def test_convergence_records_failures(z3):
    other = make_scenario(FREQUENCY, 0.0, np.deg2rad(50.0))
    rows = convergence_sweep(z3, other, [2, 4])
    assert len(rows) == 2
    assert not any(row.ok for row in rows)
    assert rows[0].error.startswith('GeometryMismatch')


def test_convergence_needs_ascending_truncations(z2, scenario):
    with pytest.raises(ValueError):
        convergence_sweep(z2, scenario, [10, 5])
    with pytest.raises(ValueError):
        convergence_sweep(z2, scenario, [])


def test_boundary_residual(z2, z3, scenario):
    for profile in (z2, z3):
        solution = solve(profile, scenario.with_truncation(10))
        assert boundary_residual(solution, profile, scenario) < 1e-8
    # a profile that needs more harmonics than the solve kept
    z1 = z1_cotangent(scenario)
    coarse = solve(z1, scenario.with_truncation(2), analytic=True)
    assert boundary_residual(coarse, z1, scenario) > 1e-3


@pytest.mark.parametrize('name', ['z2', 'z3'])
def test_boundary_residual_does_not_grow_with_truncation(name, scenario,
                                                         request):
    profile = request.getfixturevalue(name)
    residuals = [
        boundary_residual(solve(profile, scenario.with_truncation(N)),
                          profile, scenario, num_points=512)
        for N in (10, 20, 30, 60)
    ]
    for earlier, later in zip(residuals, residuals[1:]):
        assert later <= max(earlier, 1e-12)
    assert residuals[-1] < 1e-9


def test_convergence_rows_carry_timing_and_boundary_error(z3, scenario):
    rows = convergence_sweep(z3, scenario, [5, 10, 20])
    for row in rows:
        assert row.ok
        assert row.elapsed >= 0.0
        assert row.boundary_error < 1e-9
    failed = convergence_sweep(z3, make_scenario(FREQUENCY, 0.0,
                                                 np.deg2rad(50.0)), [3])
    assert np.isnan(failed[0].boundary_error)
    assert failed[0].elapsed >= 0.0


@pytest.mark.parametrize('factory', [z2_geometric_optics, z3_global_optimal])
def test_active_design_reports_non_unique_problem(factory):
    # cos(theta_r) > cos(theta_i) makes the profile active and the
    # diagonal of I + Zs Ya vanish on the target order
    other = make_scenario(FREQUENCY, np.deg2rad(60.0), 0.0, truncation=10)
    with pytest.raises(SingularSystem, match='active'):
        solve(factory(other), other)


def test_oblique_global_optimal_is_lossless(oblique_scenario):
    profile = z3_global_optimal(oblique_scenario)
    solution = solve(profile, oblique_scenario)
    target = oblique_scenario.target_index
    assert target == -1
    ci = np.cos(oblique_scenario.theta_i)
    cr = np.cos(oblique_scenario.theta_r)
    assert solution.amplitude(target) == pytest.approx(np.sqrt(ci / cr),
                                                       abs=1e-6)
