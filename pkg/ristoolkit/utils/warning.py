import warnings


class GrazingHarmonicWarning(RuntimeWarning):
    """A retained Floquet order travels exactly along the surface
    (|k_y,n| = k): its admittance is zero and it carries no normal power."""


class TruncationWarning(RuntimeWarning):
    """The truncation order does not retain every propagating harmonic."""


warnings.simplefilter('once', GrazingHarmonicWarning)
warnings.simplefilter('once', TruncationWarning)


def grazing_warning(msg: str) -> None:
    """Grazing-harmonic warning wrapper."""
    warnings.warn(msg, category=GrazingHarmonicWarning, stacklevel=3)


def truncation_warning(msg: str) -> None:
    """Insufficient-truncation warning wrapper."""
    warnings.warn(msg, category=TruncationWarning, stacklevel=3)
