from .far_field import (DEFAULT_GRID_SIZE, FarFieldPattern, FarFieldValidity,
                        far_field_validity, main_lobe, normalized_pattern,
                        pattern_factor, power_prefactor, radiated_power)
from .power import (EfficiencyRow, PowerBudget, cotangent_target_efficiency,
                    efficiency_sweep, power_budget)

__all__ = [
    'DEFAULT_GRID_SIZE',
    'FarFieldPattern',
    'FarFieldValidity',
    'far_field_validity',
    'main_lobe',
    'normalized_pattern',
    'pattern_factor',
    'power_prefactor',
    'radiated_power',
    'EfficiencyRow',
    'PowerBudget',
    'cotangent_target_efficiency',
    'efficiency_sweep',
    'power_budget',
]
