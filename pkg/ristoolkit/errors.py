"""Exception hierarchy.

Every error carries a ``category`` string, the machine-readable label the
command line prints on failure.
"""
from typing import Optional


class RISToolkitError(Exception):
    category = 'error'

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class GeometryError(RISToolkitError):
    category = 'geometry'


class DegenerateGeometry(GeometryError):
    """sin(theta_i) == sin(theta_r): the redirecting period diverges."""
    category = 'DegenerateGeometry'


class InvalidAngle(GeometryError):
    category = 'InvalidAngle'


class GeometryMismatch(GeometryError):
    """Geometric quantities that must agree do not, e.g. a profile solved
    against a scenario with another period."""
    category = 'GeometryMismatch'


class ProfileError(RISToolkitError):
    category = 'profile'


class EvaluationAtPole(ProfileError):
    category = 'EvaluationAtPole'


class SingularProfile(ProfileError):
    """The impedance denominator vanishes (or falls below the floor).

    Args:
        message (str): Description.
        y (float, optional): Offending position in meters.
    """
    category = 'SingularProfile'

    def __init__(self, message: str, y: Optional[float] = None) -> None:
        self.y = y
        if y is not None:
            message = f'{message} (at y = {y:.9e} m)'
        super().__init__(message)


class MalformedTable(ProfileError):
    category = 'MalformedTable'


class NonFiniteSample(ProfileError):
    category = 'NonFiniteSample'


class FourierConsistencyError(ProfileError):
    category = 'FourierConsistency'


class SolverError(RISToolkitError):
    category = 'solver'


class MissingCoefficient(SolverError):
    category = 'MissingCoefficient'


class SingularSystem(SolverError):
    category = 'SingularSystem'


class RankDeficient(SolverError):
    category = 'RankDeficient'


class ConfigError(RISToolkitError):
    """Invalid configuration.

    Args:
        message (str): Description.
        context (str, optional): Config line, key or flag at fault.
    """
    category = 'ConfigError'

    def __init__(self, message: str, context: Optional[str] = None) -> None:
        self.context = context
        if context:
            message = f'{context}: {message}'
        super().__init__(message)
