from .mode_matching import (CONDITION_LIMIT, ConvergenceRow, ModalSolution,
                            SolveDiagnostics, admittance_matrix,
                            boundary_residual, convergence_sweep,
                            reflection_matrix, solve, toeplitz_matrix)

__all__ = [
    'CONDITION_LIMIT',
    'ConvergenceRow',
    'ModalSolution',
    'SolveDiagnostics',
    'admittance_matrix',
    'boundary_residual',
    'convergence_sweep',
    'reflection_matrix',
    'solve',
    'toeplitz_matrix',
]
