from .args import (OutputArguments, ProfileArguments, RunConfig,
                   ScenarioArguments, SweepArguments, VerifyArguments)
from .commands import (COMMANDS, cmd_design, cmd_pattern, cmd_solve,
                       cmd_sweep, cmd_verify)
from .config import parse_config, parse_modes

__all__ = [
    'OutputArguments',
    'ProfileArguments',
    'RunConfig',
    'ScenarioArguments',
    'SweepArguments',
    'VerifyArguments',
    'COMMANDS',
    'cmd_design',
    'cmd_pattern',
    'cmd_solve',
    'cmd_sweep',
    'cmd_verify',
    'parse_config',
    'parse_modes',
]
