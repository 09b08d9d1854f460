from .geometry import (ETA0, SPEED_OF_LIGHT, FloquetHarmonic, FloquetLadder,
                       ModeClass, ScatterScenario, check_design_phase,
                       floquet_ladder, harmonic, make_scenario,
                       propagating_indices)

__all__ = [
    'ETA0',
    'SPEED_OF_LIGHT',
    'FloquetHarmonic',
    'FloquetLadder',
    'ModeClass',
    'ScatterScenario',
    'check_design_phase',
    'floquet_ladder',
    'harmonic',
    'make_scenario',
    'propagating_indices',
]
