"""CSV serialization of solver results.

Every file starts with ``#`` comment lines echoing the resolved config and a
short summary, followed by a header row and the data rows. Floats use
``%.12e`` so identical runs give identical bytes.
"""
import csv
import sys
from contextlib import contextmanager
from typing import Iterable, List, Optional, Sequence, TextIO

import numpy as np

from ristoolkit.analysis.far_field import FarFieldPattern
from ristoolkit.analysis.power import EfficiencyRow, PowerBudget
from ristoolkit.floquet.geometry import ScatterScenario, floquet_ladder
from ristoolkit.solver.mode_matching import ModalSolution
from ristoolkit.verification.suite import SuiteReport

from .args import RunConfig

DB_FLOOR = -120.0

HARMONICS_COLUMNS = ('n', 'Re(B_n)', 'Im(B_n)', 'abs(B_n)', 'mode_class',
                     'theta_deg_or_blank', 'power_fraction')
PATTERN_COLUMNS = ('theta_deg', 'normalized', 'normalized_dB', 'P_rad_rel')
SWEEP_COLUMNS = ('value', 'efficiency', 'total_reflected', 'residual',
                 'error')
SUITE_COLUMNS = ('name', 'tolerance', 'value', 'status', 'detail')
DESIGN_COLUMNS = ('n', 'Re(B_prescribed)', 'Im(B_prescribed)',
                  'Re(B_recovered)', 'Im(B_recovered)', 'abs_error')


def fmt(value: float) -> str:
    value = float(value)
    if np.isnan(value):
        return 'nan'
    return f'{value:.12e}'


def header_lines(config: RunConfig, summary: Sequence[str] = ()) -> List[str]:
    return list(config.describe()) + list(summary)


@contextmanager
def open_output(path: Optional[str]):
    """Yield a text stream for ``path``; standard output when None."""
    if path is None:
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, 'w', newline='') as f:
            yield f


def write_csv(stream: TextIO, comments: Iterable[str],
              columns: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    for line in comments:
        stream.write(f'# {line}\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(rows)


def harmonic_rows(solution: ModalSolution, scenario: ScatterScenario,
                  budget: PowerBudget) -> List[List[str]]:
    ladder = floquet_ladder(scenario.with_truncation(solution.truncation))
    rows = []
    for i, n in enumerate(ladder.orders):
        b = solution.amplitudes[i]
        if ladder.propagating[i]:
            mode_class = 'Propagating'
            angle = fmt(np.rad2deg(ladder.angles[i]))
        else:
            mode_class = 'Evanescent'
            angle = ''
        rows.append([
            str(int(n)),
            fmt(b.real),
            fmt(b.imag),
            fmt(abs(b)),
            mode_class,
            angle,
            fmt(budget.fractions.get(int(n), 0.0)),
        ])
    return rows


def pattern_rows(pattern: FarFieldPattern,
                 scenario: ScatterScenario) -> List[List[str]]:
    """``P_rad_rel`` is P_rad over the specular peak of a same-size perfect
    conductor, ``|F|^2 / (2 cos(theta_i))^2``."""
    reference = (2.0 * np.cos(scenario.theta_i))**2
    relative = np.abs(pattern.factor)**2 / reference
    db = pattern.normalized_db(DB_FLOOR)
    return [[fmt(np.rad2deg(t)), fmt(v), fmt(d), fmt(p)]
            for t, v, d, p in zip(pattern.theta_grid, pattern.normalized, db,
                                  relative)]


def sweep_rows(values: Sequence[float], efficiencies: Sequence[float],
               totals: Sequence[float], residuals: Sequence[float],
               errors: Sequence[Optional[str]]) -> List[List[str]]:
    return [[fmt(v), fmt(e), fmt(t), fmt(r), err or '']
            for v, e, t, r, err in zip(values, efficiencies, totals,
                                       residuals, errors)]


def efficiency_rows(rows: Sequence[EfficiencyRow]) -> List[List[str]]:
    return sweep_rows([np.rad2deg(r.theta_r) for r in rows],
                      [r.efficiency for r in rows],
                      [r.total_reflected for r in rows],
                      [r.residual_norm for r in rows], [r.error for r in rows])


def suite_rows(report: SuiteReport) -> List[List[str]]:
    return [[c.name, fmt(c.tolerance), fmt(c.value), c.status, c.detail]
            for c in report.checks]


def design_rows(prescribed, recovered) -> List[List[str]]:
    rows = []
    for n in sorted(recovered):
        want = complex(prescribed.get(n, 0.0))
        got = complex(recovered[n])
        rows.append([
            str(n),
            fmt(want.real),
            fmt(want.imag),
            fmt(got.real),
            fmt(got.imag),
            fmt(abs(got - want)),
        ])
    return rows


def read_csv(path: str):
    """Return (comment lines, header, rows) of a file written here."""
    comments, data = [], []
    with open(path, 'r', newline='') as f:
        for line in f:
            if line.startswith('#'):
                comments.append(line[1:].strip())
            else:
                data.append(line)
    rows = list(csv.reader(data))
    return comments, rows[0], rows[1:]
