"""Configuration loading: TOML file, then flag overrides, then validation.

File layout::

    frequency_ghz = 28.0
    theta_r_deg = 70.0

    [profile]
    kind = "synthesized"
    modes = { "1" = [1.0, 0.0], "0" = -0.5 }

    [output]
    path = "harmonics.csv"

    [sweep]
    variable = "theta_r_deg"
    values = [30, 50, 70]

    [verify]
    tolerance_scale = 1.0
"""
import logging
import math
import os
from dataclasses import fields
from typing import Any, Dict, Mapping, Optional, Tuple

import toml

from ristoolkit.errors import ConfigError

from .args import (LOG_LEVELS, PROFILE_KINDS, SWEEP_VARIABLES,
                   OutputArguments, ProfileArguments, RunConfig,
                   ScenarioArguments, SweepArguments, VerifyArguments)

logger = logging.getLogger(__name__)

GROUPS = {
    'scenario': ScenarioArguments,
    'profile': ProfileArguments,
    'output': OutputArguments,
    'sweep': SweepArguments,
    'verify': VerifyArguments,
}
MIN_GRID_SIZE = 181


def flag_name(group: str, key: str) -> str:
    """Command-line flag of a config field."""
    special = {
        ('profile', 'kind'): '--profile',
        ('output', 'path'): '--output',
        ('sweep', 'variable'): '--sweep-variable',
        ('sweep', 'values'): '--sweep-values',
    }
    return special.get((group, key), '--' + key.replace('_', '-'))


def parse_modes(text: str, context: str = '--modes') -> Dict[int, complex]:
    """Parse ``"1=1, 0=-0.5+0.2j"``."""
    modes = {}
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        if '=' not in item:
            raise ConfigError(f'expected n=B_n, got {item!r}', context)
        n, b = (s.strip() for s in item.split('=', 1))
        try:
            index = int(n)
            amplitude = complex(b.replace(' ', ''))
        except ValueError:
            raise ConfigError(f'bad mode entry {item!r}', context)
        if index in modes:
            raise ConfigError(f'mode {index} given twice', context)
        modes[index] = amplitude
    if not modes:
        raise ConfigError('no modes given', context)
    return modes


def _complex_value(value: Any, context: str) -> complex:
    if isinstance(value, str):
        try:
            return complex(value.replace(' ', ''))
        except ValueError:
            raise ConfigError(f'not a complex number: {value!r}', context)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError('complex values are [re, im] pairs', context)
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, bool):
        raise ConfigError(f'not a complex number: {value!r}', context)
    if isinstance(value, (int, float)):
        return complex(value)
    raise ConfigError(f'not a complex number: {value!r}', context)


def _modes_value(value: Any, context: str) -> Dict[int, complex]:
    if isinstance(value, str):
        return parse_modes(value, context)
    if isinstance(value, Mapping):
        modes = {}
        for n, b in value.items():
            try:
                index = int(n)
            except ValueError:
                raise ConfigError(f'mode index {n!r} is not an integer',
                                  context)
            modes[index] = _complex_value(b, f'{context}.{n}')
        if not modes:
            raise ConfigError('no modes given', context)
        return modes
    raise ConfigError('modes must be a table or "n=B_n, ..." text', context)


def _coerce(group: str, key: str, value: Any, context: str) -> Any:
    """Convert a raw file or flag value to the field's type."""
    if value is None:
        return None
    if (group, key) == ('profile', 'modes'):
        return _modes_value(value, context)
    if (group, key) == ('profile', 'impedance'):
        return _complex_value(value, context)
    if (group, key) == ('sweep', 'values'):
        if isinstance(value, str):
            value = [v for v in value.replace(',', ' ').split()]
        try:
            return [float(v) for v in value]
        except (TypeError, ValueError):
            raise ConfigError(f'bad sweep values {value!r}', context)
    default = {f.name: f for f in fields(GROUPS[group])}[key]
    kind = default.type
    try:
        if kind in (int, 'int', Optional[int]):
            number = float(value)
            if number != int(number):
                raise ValueError
            return int(number)
        if kind in (float, 'float'):
            return float(value)
        if kind in (bool, 'bool'):
            if isinstance(value, str):
                if value.lower() not in ('true', 'false', '1', '0'):
                    raise ValueError
                return value.lower() in ('true', '1')
            return bool(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f'bad value {value!r} for {key}', context)


def _load_file(path: str) -> Tuple[Dict[Tuple[str, str], Any], Dict[Tuple[
        str, str], str]]:
    if not os.path.isfile(path):
        raise ConfigError('config file not found', path)
    try:
        data = toml.load(path)
    except toml.TomlDecodeError as e:
        raise ConfigError(f'invalid TOML: {e.msg}', f'{path}:{e.lineno}')
    values, sources = {}, {}
    scenario_keys = {f.name for f in fields(ScenarioArguments)}
    for key, value in data.items():
        if isinstance(value, dict) and key in GROUPS and key != 'scenario':
            known = {f.name for f in fields(GROUPS[key])}
            for sub, sub_value in value.items():
                if sub not in known:
                    raise ConfigError(f'unknown key [{key}].{sub}', path)
                values[(key, sub)] = sub_value
                sources[(key, sub)] = f'{path}: [{key}].{sub}'
        elif key in scenario_keys:
            values[('scenario', key)] = value
            sources[('scenario', key)] = f'{path}: {key}'
        else:
            raise ConfigError(f'unknown key {key}', path)
    return values, sources


def _validate(config: RunConfig, sources: Mapping[Tuple[str, str],
                                                 str]) -> None:

    def where(group, key):
        return sources.get((group, key), flag_name(group, key))

    s = config.scenario
    if not (math.isfinite(s.frequency_ghz) and s.frequency_ghz > 0):
        raise ConfigError('frequency must be positive',
                          where('scenario', 'frequency_ghz'))
    for key in ('theta_i_deg', 'theta_r_deg'):
        angle = getattr(s, key)
        if not (math.isfinite(angle) and abs(angle) < 90.0):
            raise ConfigError(
                f'angle {angle} deg is outside (-90, 90) degrees',
                where('scenario', key))
    if s.theta_i_deg == s.theta_r_deg:
        raise ConfigError('theta_r_deg equals theta_i_deg: no finite period',
                          where('scenario', 'theta_r_deg'))
    if s.truncation < 0:
        raise ConfigError('truncation must be >= 0',
                          where('scenario', 'truncation'))
    if not s.periods_per_side > 0:
        raise ConfigError('periods_per_side must be positive',
                          where('scenario', 'periods_per_side'))
    if s.grid_size < MIN_GRID_SIZE:
        raise ConfigError(f'grid_size must be >= {MIN_GRID_SIZE}',
                          where('scenario', 'grid_size'))
    if s.fourier_grid is not None and s.fourier_grid < 8 * s.truncation + 2:
        raise ConfigError(f'fourier_grid must be >= {8 * s.truncation + 2}',
                          where('scenario', 'fourier_grid'))

    p = config.profile
    if p.kind not in PROFILE_KINDS:
        raise ConfigError(
            f'unknown profile kind {p.kind!r}, expected one of '
            f'{", ".join(PROFILE_KINDS)}', where('profile', 'kind'))
    if p.kind == 'tabulated':
        if not p.table:
            raise ConfigError('tabulated profile needs a table file',
                              where('profile', 'table'))
        if not os.path.isfile(p.table):
            raise ConfigError(f'table file {p.table!r} not found',
                              where('profile', 'table'))
    if p.kind == 'synthesized' and not p.modes:
        raise ConfigError('synthesized profile needs prescribed modes',
                          where('profile', 'modes'))
    if p.kind == 'uniform' and p.impedance is None:
        raise ConfigError('uniform profile needs an impedance',
                          where('profile', 'impedance'))

    o = config.output
    if o.log_level.upper() not in LOG_LEVELS:
        raise ConfigError(f'unknown log level {o.log_level!r}',
                          where('output', 'log_level'))
    if o.jobs < 1:
        raise ConfigError('jobs must be >= 1', where('output', 'jobs'))

    w = config.sweep
    if w.variable not in SWEEP_VARIABLES:
        raise ConfigError(
            f'unknown sweep variable {w.variable!r}, expected one of '
            f'{", ".join(SWEEP_VARIABLES)}', where('sweep', 'variable'))
    if not w.values:
        raise ConfigError('sweep needs at least one value',
                          where('sweep', 'values'))
    if w.variable == 'N':
        if any(v != int(v) or v < 0 for v in w.values):
            raise ConfigError('N sweep values must be integers >= 0',
                              where('sweep', 'values'))
        if any(b <= a for a, b in zip(w.values, w.values[1:])):
            raise ConfigError('N sweep values must ascend',
                              where('sweep', 'values'))

    if not (math.isfinite(config.verify.tolerance_scale)
            and config.verify.tolerance_scale >= 0):
        raise ConfigError('tolerance_scale must be >= 0',
                          where('verify', 'tolerance_scale'))


def parse_config(path: Optional[str] = None,
                 overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Build a validated :class:`RunConfig`.

    Args:
        path (str, optional): TOML config file.
        overrides (Mapping[str, Any], optional): ``'group.key'`` to value,
            typically from command-line flags; they win over the file.
            ``None`` values are ignored.

    Returns:
        RunConfig: Defaults, updated by the file, then by the overrides.
    """
    values, sources = _load_file(path) if path else ({}, {})
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        group, _, key = dotted.partition('.')
        if group not in GROUPS or key not in {
                f.name
                for f in fields(GROUPS[group])
        }:
            raise ConfigError(f'unknown setting {dotted}')
        values[(group, key)] = value
        sources[(group, key)] = flag_name(group, key)

    config = RunConfig()
    for (group, key), raw in values.items():
        context = sources[(group, key)]
        setattr(getattr(config, group), key, _coerce(group, key, raw,
                                                      context))
    config.output.log_level = config.output.log_level.upper()
    _validate(config, sources)
    logger.debug('resolved config: %s', '; '.join(config.describe()))
    return config
