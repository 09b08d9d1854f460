from .oracle import OracleReport, collocation_solve, default_num_points
from .suite import (DEFAULT_CHECKS, FAIL, INFO, PASS, CheckResult,
                    SuiteReport, random_mode_sets, run_invariant_suite)

__all__ = [
    'OracleReport',
    'collocation_solve',
    'default_num_points',
    'DEFAULT_CHECKS',
    'FAIL',
    'INFO',
    'PASS',
    'CheckResult',
    'SuiteReport',
    'random_mode_sets',
    'run_invariant_suite',
]
