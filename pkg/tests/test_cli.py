import logging

import numpy as np
import pytest

from ristoolkit.cli import commands, parse_config, parse_modes
from ristoolkit.cli.io import read_csv
from ristoolkit.cli.main import main
from ristoolkit.errors import ConfigError
from ristoolkit.impedance import read_table, write_table
from ristoolkit.utils import logger as logger_module

from .conftest import COS_R


@pytest.fixture(autouse=True)
def fresh_logger():
    yield
    root = logging.getLogger('ristoolkit')
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    logger_module.logger_initialized.clear()


def _rows_by_order(path):
    _, header, rows = read_csv(str(path))
    index = {name: i for i, name in enumerate(header)}
    return {int(r[0]): r for r in rows}, index


def _summary(comments, key):
    for line in comments:
        if line.startswith(key + ' = '):
            return line.split(' = ', 1)[1]
    raise KeyError(key)


def test_parse_config_defaults():
    config = parse_config()
    assert config.scenario.frequency_ghz == 28.0
    assert config.scenario.theta_r_deg == 70.0
    assert config.scenario.truncation == 30
    assert config.profile.kind == 'z3'
    assert config.sweep.values == [5, 10, 20, 30]
    assert 'scenario.truncation = 30' in config.describe()


def test_parse_modes():
    assert parse_modes('1=1, 0=-0.5+0.2j') == {1: 1 + 0j, 0: -0.5 + 0.2j}
    for bad in ('', '1', '1=x', '1=1, 1=2'):
        with pytest.raises(ConfigError):
            parse_modes(bad)


@pytest.mark.parametrize('overrides,context', [
    ({'scenario.theta_r_deg': '95'}, '--theta-r-deg'),
    ({'scenario.theta_r_deg': '0'}, '--theta-r-deg'),
    ({'scenario.truncation': '2.5'}, '--truncation'),
    ({'scenario.grid_size': '100'}, '--grid-size'),
    ({'profile.kind': 'tabulated'}, '--table'),
    ({'profile.kind': 'uniform'}, '--impedance'),
    ({'profile.kind': 'z9'}, '--profile'),
    ({'sweep.values': '10,5'}, '--sweep-values'),
    ({'output.jobs': '0'}, '--jobs'),
])
def test_invalid_settings(overrides, context):
    with pytest.raises(ConfigError) as info:
        parse_config(overrides=overrides)
    assert info.value.context == context


def test_config_file_and_overrides(tmp_path):
    path = tmp_path / 'run.toml'
    path.write_text('theta_r_deg = 60.0\n'
                    'truncation = 12\n'
                    '[profile]\n'
                    'kind = "synthesized"\n'
                    'modes = { "1" = [1.0, 0.0], "0" = "-0.5" }\n'
                    '[output]\n'
                    'log_level = "warning"\n')
    config = parse_config(str(path), {'scenario.theta_r_deg': '50'})
    assert config.scenario.theta_r_deg == 50.0
    assert config.scenario.truncation == 12
    assert config.profile.modes == {1: 1 + 0j, 0: -0.5 + 0j}
    assert config.output.log_level == 'WARNING'


def test_config_file_errors(tmp_path):
    unknown = tmp_path / 'unknown.toml'
    unknown.write_text('[profile]\ncolour = "red"\n')
    with pytest.raises(ConfigError, match='colour'):
        parse_config(str(unknown))
    broken = tmp_path / 'broken.toml'
    broken.write_text('theta_r_deg = \n')
    with pytest.raises(ConfigError) as info:
        parse_config(str(broken))
    assert info.value.context.startswith(str(broken))
    with pytest.raises(ConfigError):
        parse_config(str(tmp_path / 'missing.toml'))


def test_solve_global_optimal(tmp_path):
    out = tmp_path / 'z3.csv'
    assert main(['solve', '--profile', 'z3', '--output', str(out)]) == 0
    rows, col = _rows_by_order(out)
    assert sorted(rows) == list(range(-30, 31))
    assert float(rows[1][col['abs(B_n)']]) == pytest.approx(1 / np.sqrt(COS_R),
                                                           abs=1e-6)
    assert float(rows[1][col['power_fraction']]) == pytest.approx(1.0,
                                                                 abs=1e-6)
    assert float(rows[1][col['theta_deg_or_blank']]) == pytest.approx(70.0)
    assert rows[2][col['mode_class']] == 'Evanescent'
    assert rows[2][col['theta_deg_or_blank']] == ''


def test_solve_geometric_optics(tmp_path):
    out = tmp_path / 'z2.csv'
    assert main(['solve', '--profile', 'z2', '--truncation', '10',
                 '--output', str(out)]) == 0
    comments, _, _ = read_csv(str(out))
    assert float(_summary(comments, 'efficiency')) == pytest.approx(COS_R,
                                                                    abs=1e-6)
    rows, col = _rows_by_order(out)
    assert float(rows[1][col['abs(B_n)']]) == pytest.approx(1.0, abs=1e-6)


def test_solve_cotangent_spreads_power(tmp_path):
    out = tmp_path / 'z1.csv'
    assert main(['solve', '--profile', 'z1', '--analytic', '--output',
                 str(out)]) == 0
    rows, col = _rows_by_order(out)
    fractions = [float(rows[n][col['power_fraction']]) for n in (-1, 0, 1)]
    assert all(p > 0.01 for p in fractions)
    assert sum(fractions) == pytest.approx(1.0, abs=1e-8)


def test_solve_is_deterministic(tmp_path):
    out = tmp_path / 'run.csv'
    argv = ['solve', '--profile', 'z2', '--output', str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_solve_to_stdout(capsys):
    assert main(['solve', '--profile', 'pec', '--truncation', '3']) == 0
    captured = capsys.readouterr().out
    assert 'n,Re(B_n),Im(B_n)' in captured
    assert '# profile.kind = pec' in captured


def test_solve_tabulated(tmp_path, z2, scenario):
    table = tmp_path / 'z2_table.csv'
    y, z = z2.sample_period(4096)
    write_table(str(table), y, z, scenario.period)
    out = tmp_path / 'tab.csv'
    assert main(['solve', '--profile', 'tabulated', '--table', str(table),
                 '--truncation', '10', '--output', str(out)]) == 0
    rows, col = _rows_by_order(out)
    assert float(rows[1][col['abs(B_n)']]) == pytest.approx(1.0, abs=1e-4)


def test_solve_uniform(tmp_path):
    out = tmp_path / 'uniform.csv'
    assert main(['solve', '--profile', 'uniform', '--impedance', '0',
                 '--truncation', '2', '--output', str(out)]) == 0
    rows, col = _rows_by_order(out)
    assert float(rows[0][col['Re(B_n)']]) == -1.0


def test_pattern(tmp_path):
    out = tmp_path / 'pattern.csv'
    assert main(['pattern', '--profile', 'z3', '--grid-size', '361',
                 '--output', str(out)]) == 0
    comments, header, rows = read_csv(str(out))
    assert header == ['theta_deg', 'normalized', 'normalized_dB', 'P_rad_rel']
    assert len(rows) == 361
    assert max(float(r[1]) for r in rows) == 1.0
    peak = float(_summary(comments, 'peak_angle_deg'))
    assert 60.0 <= peak <= 71.0
    assert _summary(comments, 'sinc_convention') == 'literal'


def test_pec_pattern_peaks_at_broadside(tmp_path):
    out = tmp_path / 'pec.csv'
    assert main(['pattern', '--profile', 'pec', '--output', str(out)]) == 0
    comments, _, rows = read_csv(str(out))
    assert float(_summary(comments, 'peak_angle_deg')) == pytest.approx(
        0.0, abs=1e-9)
    # a perfect conductor is its own reference
    assert max(float(r[3]) for r in rows) == pytest.approx(1.0)


def test_truncation_sweep(tmp_path):
    out = tmp_path / 'sweep.csv'
    assert main(['sweep', '--profile', 'z2', '--sweep-values', '5,10,20',
                 '--output', str(out)]) == 0
    _, header, rows = read_csv(str(out))
    assert header[:3] == ['value', 'efficiency', 'total_reflected']
    assert len(rows) == 3
    for row in rows:
        assert float(row[1]) == pytest.approx(COS_R, abs=1e-6)
        assert row[4] == ''


def test_truncation_sweep_keeps_points_the_grid_supports(tmp_path):
    out = tmp_path / 'mixed.csv'
    assert main(['sweep', '--profile', 'z2', '--truncation', '5',
                 '--fourier-grid', '64', '--sweep-values', '0,5,30',
                 '--output', str(out)]) == 0
    comments, _, rows = read_csv(str(out))
    assert [float(r[0]) for r in rows] == [0.0, 5.0, 30.0]
    for row in rows[:2]:
        assert row[4] == ''
        assert np.isfinite(float(row[1]))
    assert rows[2][4].startswith('ValueError')
    assert '4P+2' in rows[2][4]
    assert rows[2][1] == 'nan'
    assert _summary(comments, 'failed_points') == '1'


def test_angle_sweep_records_failures(tmp_path):
    out = tmp_path / 'angles.csv'
    assert main(['sweep', '--profile', 'z3', '--sweep-variable',
                 'theta_r_deg', '--sweep-values', '0, 50, 70',
                 '--output', str(out)]) == 0
    comments, _, rows = read_csv(str(out))
    assert rows[0][4].startswith('DegenerateGeometry')
    assert rows[0][1] == 'nan'
    assert float(rows[2][1]) == pytest.approx(1.0, abs=1e-6)
    assert _summary(comments, 'failed_points') == '1'


def test_angle_sweep_needs_closed_form(tmp_path):
    assert main(['sweep', '--profile', 'synthesized', '--modes', '1=1',
                 '--sweep-variable', 'theta_r_deg', '--sweep-values', '50',
                 '--output', str(tmp_path / 'x.csv')]) == 2


def test_frequency_sweep(tmp_path):
    out = tmp_path / 'freq.csv'
    assert main(['sweep', '--profile', 'z3', '--sweep-variable', 'frequency',
                 '--sweep-values', '26,28,30', '--truncation', '10',
                 '--output', str(out)]) == 0
    _, _, rows = read_csv(str(out))
    assert float(rows[1][1]) == pytest.approx(1.0, abs=1e-6)
    assert all(row[4] == '' for row in rows)


def test_sweep_where_every_point_fails(tmp_path):
    assert main(['sweep', '--profile', 'z2', '--sweep-variable',
                 'theta_r_deg', '--sweep-values', '0',
                 '--output', str(tmp_path / 'x.csv')]) == 3


def test_design_round_trip(tmp_path, z2):
    out = tmp_path / 'design.csv'
    assert main(['design', '--modes', '1=1', '--output', str(out)]) == 0
    profile = read_table(str(out))
    y, z = profile.samples
    assert len(y) == 4096
    np.testing.assert_allclose(z, z2(y), rtol=1e-9)
    comments, _, rows = read_csv(str(tmp_path / 'design_roundtrip.csv'))
    assert float(_summary(comments, 'max_abs_error')) < 1e-6
    recovered = {int(r[0]): r for r in rows}
    assert float(recovered[1][3]) == pytest.approx(1.0, abs=1e-6)


def test_design_full_absorption(tmp_path):
    out = tmp_path / 'absorber.csv'
    assert main(['design', '--modes', '0=-1', '--output', str(out)]) == 0
    _, z = read_table(str(out)).samples
    assert np.max(np.abs(z)) < 1e-12


def test_design_needs_modes(tmp_path):
    assert main(['design', '--output', str(tmp_path / 'x.csv')]) == 2


def test_verify(tmp_path):
    out = tmp_path / 'verify.csv'
    assert main(['verify', '--output', str(out)]) == 0
    comments, header, rows = read_csv(str(out))
    assert header == ['name', 'tolerance', 'value', 'status', 'detail']
    assert _summary(comments, 'failed') == '0'
    assert all(r[3] in ('pass', 'info') for r in rows)


def test_verify_with_zero_tolerance_fails(tmp_path):
    assert main(['verify', '--tolerance-scale', '0', '--truncation', '10',
                 '--output', str(tmp_path / 'v.csv')]) == 1


def test_exit_codes(tmp_path, capsys):
    out = str(tmp_path / 'x.csv')
    assert main(['solve', '--theta-r-deg', '95', '--output', out]) == 2
    assert 'category=ConfigError' in capsys.readouterr().err
    assert main(['solve', '--profile', 'tabulated', '--output', out]) == 2
    assert main(['solve', '--bogus-flag']) == 2
    assert main(['solve', '--profile', 'z3', '--theta-i-deg', '20',
                 '--theta-r-deg', '-20', '--output', out]) == 3
    assert 'category=SingularProfile' in capsys.readouterr().err
    table = tmp_path / 'broken.csv'
    table.write_text('0.0, 1.0\n')
    assert main(['solve', '--profile', 'tabulated', '--table', str(table),
                 '--output', out]) == 2
    assert 'category=MalformedTable' in capsys.readouterr().err


def test_design_to_stdout_logs_round_trip(capsys):
    assert main(['design', '--modes', '1=1']) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith('#')
    assert 'round trip not written (table on stdout): 3 orders' in captured.err
    assert 'max_abs_error = ' in captured.err


def test_library_value_error_is_a_numeric_failure(tmp_path, capsys,
                                                  monkeypatch):

    def failing_solve(config):
        raise ValueError('grid_size=64 is below 4P+2=242')

    monkeypatch.setitem(commands.COMMANDS, 'solve', failing_solve)
    assert main(['solve', '--output', str(tmp_path / 'x.csv')]) == 3
    assert 'category=ValueError' in capsys.readouterr().err


def test_rejected_profile_value_is_a_config_error(tmp_path, capsys,
                                                  monkeypatch):

    def rejecting(scenario, modes):
        raise ValueError('B_1 is not finite')

    monkeypatch.setattr(commands, 'synthesize_from_modes', rejecting)
    assert main(['solve', '--profile', 'synthesized', '--modes', '1=1',
                 '--output', str(tmp_path / 'x.csv')]) == 2
    err = capsys.readouterr().err
    assert 'category=ConfigError' in err
    assert '--profile synthesized: B_1 is not finite' in err
