from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

PROFILE_KINDS = ('z1', 'z2', 'z3', 'tabulated', 'synthesized', 'uniform',
                 'pec')
SWEEP_VARIABLES = ('N', 'theta_r_deg', 'frequency')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


@dataclass
class ScenarioArguments:
    """Scenario settings (top-level keys of the config file)."""

    frequency_ghz: float = field(
        default=28.0,
        metadata={'help': 'Operating frequency in GHz. Defaults to 28'},
    )
    theta_i_deg: float = field(
        default=0.0,
        metadata={'help': 'Incidence angle in degrees. Defaults to 0'},
    )
    theta_r_deg: float = field(
        default=70.0,
        metadata={
            'help': 'Design reflection angle in degrees. Defaults to 70'
        },
    )
    truncation: int = field(
        default=30,
        metadata={
            'help':
            'Number N of Floquet harmonics kept on each side of n = 0. Defaults to 30'
        },
    )
    periods_per_side: float = field(
        default=5.0,
        metadata={
            'help':
            'Surface size in periods along x and y (5 means a 5D x 5D surface). Defaults to 5'
        },
    )
    grid_size: int = field(
        default=1801,
        metadata={
            'help':
            'Number of pattern points over [-90, 90] degrees. Defaults to 1801'
        },
    )
    fourier_grid: Optional[int] = field(
        default=None,
        metadata={
            'help':
            'DFT size for the impedance Fourier coefficients. Defaults to max(4096, 16N)'
        },
    )


@dataclass
class ProfileArguments:
    """Impedance profile settings ([profile] table)."""

    kind: str = field(
        default='z3',
        metadata={
            'help':
            "Profile kind, one of z1, z2, z3, tabulated, synthesized, uniform, pec. Defaults to 'z3'"
        },
    )
    table: Optional[str] = field(
        default=None,
        metadata={'help': 'Impedance table file for tabulated profiles.'},
    )
    modes: Optional[Dict[int, complex]] = field(
        default=None,
        metadata={
            'help':
            "Prescribed reflected amplitudes for synthesized profiles, e.g. '1=1, 0=-0.5+0.2j'"
        },
    )
    impedance: Optional[complex] = field(
        default=None,
        metadata={
            'help': "Constant impedance in ohms for uniform profiles, e.g. '100-50j'"
        },
    )
    analytic: bool = field(
        default=False,
        metadata={
            'help':
            'Use the closed-form Fourier series of the z1 profile. Defaults to False'
        },
    )


@dataclass
class OutputArguments:
    """Output and execution settings ([output] table)."""

    path: Optional[str] = field(
        default=None,
        metadata={'help': 'Output file. Defaults to standard output'},
    )
    log_level: str = field(
        default='INFO',
        metadata={'help': "Log level. Defaults to 'INFO'"},
    )
    log_file: Optional[str] = field(
        default=None,
        metadata={'help': 'Optional log file, in addition to stderr.'},
    )
    jobs: int = field(
        default=1,
        metadata={
            'help': 'Worker processes for sweeps and verification. Defaults to 1'
        },
    )
    progress: bool = field(
        default=False,
        metadata={'help': 'Show a progress bar on stderr. Defaults to False'},
    )


@dataclass
class SweepArguments:
    """Sweep settings ([sweep] table)."""

    variable: str = field(
        default='N',
        metadata={
            'help':
            "Swept variable, one of N, theta_r_deg, frequency (GHz). Defaults to 'N'"
        },
    )
    values: List[float] = field(
        default_factory=lambda: [5, 10, 20, 30],
        metadata={
            'help': 'Sweep points, ascending for N. Defaults to 5, 10, 20, 30'
        },
    )


@dataclass
class VerifyArguments:
    """Verification settings ([verify] table)."""

    tolerance_scale: float = field(
        default=1.0,
        metadata={
            'help': 'Multiplies every verification tolerance. Defaults to 1'
        },
    )


@dataclass
class RunConfig:
    scenario: ScenarioArguments = field(default_factory=ScenarioArguments)
    profile: ProfileArguments = field(default_factory=ProfileArguments)
    output: OutputArguments = field(default_factory=OutputArguments)
    sweep: SweepArguments = field(default_factory=SweepArguments)
    verify: VerifyArguments = field(default_factory=VerifyArguments)

    def describe(self) -> List[str]:
        """``key = value`` lines of the resolved configuration, sorted within
        each group, for output headers."""
        lines = []
        for group, values in asdict(self).items():
            for key in sorted(values):
                value = values[key]
                if group == 'profile' and key == 'modes' and value:
                    value = ', '.join(f'{n}={complex(b)!r}'
                                      for n, b in sorted(value.items()))
                lines.append(f'{group}.{key} = {value}')
        return lines
