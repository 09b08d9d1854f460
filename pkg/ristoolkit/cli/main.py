"""``ristoolkit`` command line.

Exit codes: 0 success, 1 verification failure, 2 configuration error
(a malformed impedance table counts as one), 3 numeric failure (any other
library error, a plain ``ValueError`` included). Errors are reported on
stderr as ``error: category=<category> message=<text>``.
"""
import argparse
import sys
from dataclasses import fields
from typing import List, Optional

from ristoolkit.errors import ConfigError, MalformedTable, RISToolkitError
from ristoolkit.utils.logger import get_text_logger

from .commands import (COMMANDS, EXIT_CONFIG_ERROR, EXIT_NUMERIC_FAILURE)
from .config import GROUPS, flag_name, parse_config

DESCRIPTIONS = {
    'solve': 'Reflected Floquet amplitudes and power fractions (CSV).',
    'pattern': 'Normalized far-field pattern over [-90, 90] degrees (CSV).',
    'sweep': 'Efficiency versus N, theta_r_deg or frequency (CSV).',
    'design': 'Impedance table synthesized from prescribed modes.',
    'verify': 'Invariant and cross-check suite; exit 1 on failure.',
}


def _settings_parser() -> argparse.ArgumentParser:
    """Flags for every config field, help taken from the field metadata."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', default=None,
                        help='TOML config file; flags override its values.')
    for group, cls in GROUPS.items():
        section = parser.add_argument_group(group)
        for f in fields(cls):
            flag = flag_name(group, f.name)
            help_text = f.metadata.get('help')
            if f.type is bool:
                section.add_argument(flag, dest=f'{group}.{f.name}',
                                     action='store_const', const=True,
                                     default=None, help=help_text)
            else:
                section.add_argument(flag, dest=f'{group}.{f.name}',
                                     default=None, help=help_text)
    return parser


def build_parser() -> argparse.ArgumentParser:
    settings = _settings_parser()
    parser = argparse.ArgumentParser(
        prog='ristoolkit',
        description='Floquet mode-matching solver for periodic impedance '
        'surfaces.')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[settings],
                              help=DESCRIPTIONS[name],
                              description=DESCRIPTIONS[name])
    return parser


def _report(error: RISToolkitError) -> None:
    sys.stderr.write(
        f'error: category={error.category} message={error.message}\n')


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags and 0 on --help
        return int(e.code or 0)
    namespace = vars(args)
    command = namespace.pop('command')
    config_path = namespace.pop('config')
    try:
        config = parse_config(config_path, namespace)
    except ConfigError as e:
        _report(e)
        return EXIT_CONFIG_ERROR

    logger = get_text_logger(log_file=config.output.log_file,
                             log_level=config.output.log_level)
    logger.debug('running %s', command)
    try:
        return COMMANDS[command](config)
    except (ConfigError, MalformedTable) as e:
        _report(e)
        return EXIT_CONFIG_ERROR
    except RISToolkitError as e:
        _report(e)
        return EXIT_NUMERIC_FAILURE
    except ValueError as e:
        sys.stderr.write(f'error: category=ValueError message={e}\n')
        return EXIT_NUMERIC_FAILURE


if __name__ == '__main__':
    sys.exit(main())
