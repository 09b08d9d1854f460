from .base import (Estimation, FourierImpedance, ImpedanceProfile,
                   ProfileKind, ScenarioLink, default_grid_size,
                   fourier_coefficients)
from .profiles import (CotangentProfile, GeometricOpticsProfile,
                       GlobalOptimalProfile, UniformProfile, matched_impedance,
                       pec, uniform_impedance, z1_cotangent,
                       z2_geometric_optics, z3_global_optimal)
from .synthesis import ModeSynthesizedProfile, synthesize_from_modes
from .tabulated import (TabulatedProfile, load_tabulated, read_table,
                        write_table)

__all__ = [
    'Estimation',
    'FourierImpedance',
    'ImpedanceProfile',
    'ProfileKind',
    'ScenarioLink',
    'default_grid_size',
    'fourier_coefficients',
    'CotangentProfile',
    'GeometricOpticsProfile',
    'GlobalOptimalProfile',
    'UniformProfile',
    'matched_impedance',
    'pec',
    'uniform_impedance',
    'z1_cotangent',
    'z2_geometric_optics',
    'z3_global_optimal',
    'ModeSynthesizedProfile',
    'synthesize_from_modes',
    'TabulatedProfile',
    'load_tabulated',
    'read_table',
    'write_table',
]
