"""Tabulated impedance profiles and their on-disk text format.

A table file holds one ``y_m, Re Z, Im Z`` row per sample, sorted by ``y``
over ``[0, D)``, preceded by a ``# period = <meters>`` comment line. Other
``#`` lines are ignored.
"""
import logging
import re
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ristoolkit.errors import MalformedTable

from .base import ImpedanceProfile, ProfileKind

logger = logging.getLogger(__name__)

_PERIOD_LINE = re.compile(r'^#\s*period\s*=\s*(\S+)\s*$')


class TabulatedProfile(ImpedanceProfile):
    """Periodic linear interpolation between complex samples.

    The segment between the last sample and ``y_0 + D`` wraps around.
    """

    kind = ProfileKind.TABULATED

    def __init__(self, period: float, y: np.ndarray, z: np.ndarray):
        super().__init__(period)
        self._y = np.asarray(y, dtype=float)
        self._z = np.asarray(z, dtype=complex)

    @property
    def samples(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._y.copy(), self._z.copy()

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        return np.interp(u * self.period, self._y, self._z,
                         period=self.period)


def load_tabulated(period: float,
                   samples: Iterable[Tuple[float, complex]]) -> TabulatedProfile:
    """Validate ``(y_m, Z_m)`` pairs and build a tabulated profile."""
    if not (np.isfinite(period) and period > 0):
        raise MalformedTable(f'period must be positive, got {period}')
    rows = list(samples)
    if len(rows) < 2:
        raise MalformedTable(f'need at least 2 samples, got {len(rows)}')
    y = np.array([float(r[0]) for r in rows])
    z = np.array([complex(r[1]) for r in rows])
    if not np.all(np.isfinite(y)):
        raise MalformedTable('non-finite sample position')
    bad = ~np.isfinite(z)
    if np.any(bad):
        raise MalformedTable(
            f'non-finite impedance at y = {y[bad][0]:.9e} m')
    if np.any(np.diff(y) <= 0):
        raise MalformedTable('sample positions must be strictly increasing')
    if y[0] < 0 or y[-1] >= period:
        raise MalformedTable(
            f'sample positions must lie in [0, {period:.9e}) m')
    return TabulatedProfile(period, y, z)


def read_table(path: str, period: Optional[float] = None) -> TabulatedProfile:
    """Read a table file. ``period`` overrides the file's ``# period`` line."""
    file_period = None
    rows = []
    with open(path, 'r') as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith('#'):
                match = _PERIOD_LINE.match(line)
                if match:
                    try:
                        file_period = float(match.group(1))
                    except ValueError:
                        raise MalformedTable(
                            f'{path}:{lineno}: bad period {match.group(1)!r}')
                continue
            fields = [s.strip() for s in line.split(',')]
            if len(fields) != 3:
                raise MalformedTable(
                    f'{path}:{lineno}: expected 3 fields, got {len(fields)}')
            try:
                y, re_z, im_z = (float(s) for s in fields)
            except ValueError:
                raise MalformedTable(f'{path}:{lineno}: non-numeric field')
            rows.append((y, complex(re_z, im_z)))
    if period is None:
        period = file_period
    if period is None:
        raise MalformedTable(f'{path}: missing "# period = ..." line')
    logger.info('read %d impedance samples from %s', len(rows), path)
    return load_tabulated(period, rows)


def format_table(y: Sequence[float],
                 z: Sequence[complex],
                 period: float,
                 header: Sequence[str] = ()) -> str:
    """Samples as text in the format :func:`read_table` reads."""
    lines = [f'# {line}' for line in header]
    lines.append(f'# period = {period:.17e}')
    for y_m, z_m in zip(y, z):
        z_m = complex(z_m)
        lines.append(f'{y_m:.17e},{z_m.real:.17e},{z_m.imag:.17e}')
    return '\n'.join(lines) + '\n'


def write_table(path: str,
                y: Sequence[float],
                z: Sequence[complex],
                period: float,
                header: Sequence[str] = ()) -> None:
    with open(path, 'w') as f:
        f.write(format_table(y, z, period, header))
