from ristoolkit import analysis, floquet, impedance, solver, utils, verification
from ristoolkit.analysis import (FarFieldPattern, PowerBudget,
                                 far_field_validity, normalized_pattern,
                                 pattern_factor, power_budget, radiated_power)
from ristoolkit.errors import RISToolkitError
from ristoolkit.floquet import ScatterScenario, make_scenario
from ristoolkit.impedance import (fourier_coefficients, load_tabulated,
                                  synthesize_from_modes, uniform_impedance,
                                  z1_cotangent, z2_geometric_optics,
                                  z3_global_optimal)
from ristoolkit.solver import ModalSolution, solve
from ristoolkit.verification import collocation_solve, run_invariant_suite

__version__ = '0.1.0'

__all__ = [
    'analysis',
    'floquet',
    'impedance',
    'solver',
    'utils',
    'verification',
    'FarFieldPattern',
    'PowerBudget',
    'far_field_validity',
    'normalized_pattern',
    'pattern_factor',
    'power_budget',
    'radiated_power',
    'RISToolkitError',
    'ScatterScenario',
    'make_scenario',
    'fourier_coefficients',
    'load_tabulated',
    'synthesize_from_modes',
    'uniform_impedance',
    'z1_cotangent',
    'z2_geometric_optics',
    'z3_global_optimal',
    'ModalSolution',
    'solve',
    'collocation_solve',
    'run_invariant_suite',
]
