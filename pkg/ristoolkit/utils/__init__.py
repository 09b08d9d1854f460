"""Utils package."""

from .logger import get_logger, get_outdir, get_text_logger
from .progress import DummyTqdm, tqdm_config, track_progress
from .timer import Timer, TimerError
from .warning import (GrazingHarmonicWarning, TruncationWarning,
                      grazing_warning, truncation_warning)

__all__ = [
    'get_logger',
    'get_outdir',
    'get_text_logger',
    'DummyTqdm',
    'tqdm_config',
    'track_progress',
    'Timer',
    'TimerError',
    'GrazingHarmonicWarning',
    'TruncationWarning',
    'grazing_warning',
    'truncation_warning',
]
