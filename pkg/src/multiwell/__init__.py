"""multiwell: bound states, spectral dynamics and localization control in
1-D multiple-quantum-well potentials.

The package solves the stationary problem on a hard-wall grid (tight-binding
tridiagonal Hamiltonian, Sturm bisection + inverse iteration), propagates
states exactly in the eigenbasis, measures per-well localization over scaled
time tau = t / T_rev, designs sign-pattern superpositions that localize in a
chosen well, and inverts barrier height against a target hop period.
"""

__version__ = "0.1.0"

from .analytic import (
    infinite_well_basis,
    infinite_well_energy,
    infinite_well_state,
    revival_time,
)
from .config import InitialStateSpec, ScenarioConfig, config_from_dict, load_config
from .core import Grid, Wavefunction, inner_product, normalize
from .design import (
    InverseDesignResult,
    SignPattern,
    best_sign_pattern,
    inverse_barrier_height,
    localized_state,
    table_pattern,
    two_well_hop_period,
)
from .dynamics import (
    CorrelationTrace,
    HopDetection,
    HopEvent,
    SpectralState,
    any_well_trace,
    autocorrelation,
    detect_hops,
    evolve,
    probability_in_well,
    project,
    well_correlation,
)
from .errors import (
    BasisMismatchError,
    BracketError,
    ConfigError,
    ConvergenceError,
    DegenerateStateError,
    DesignError,
    DomainError,
    GeometryError,
    GridMismatchError,
    InvalidBasisError,
    MultiwellError,
    NonMonotonicError,
    TruncationError,
)
from .potential import MultiWellSpec, PotentialProfile, build_multiwell, sample
from .scenario import run_scenario, sweep
from .spectral import (
    DEFAULT_SEED,
    EigenSolution,
    TridiagonalHamiltonian,
    assemble,
    eigenvalue_count_below,
    lowest_eigenpairs,
)
from .units import DEFAULT_UNITS, HBAR_EV_FS, HBAR_SQ_OVER_TWO_ME, UnitSystem

__all__ = [
    "__version__",
    "Grid",
    "Wavefunction",
    "inner_product",
    "normalize",
    "UnitSystem",
    "DEFAULT_UNITS",
    "HBAR_EV_FS",
    "HBAR_SQ_OVER_TWO_ME",
    "MultiWellSpec",
    "PotentialProfile",
    "build_multiwell",
    "sample",
    "infinite_well_energy",
    "infinite_well_state",
    "infinite_well_basis",
    "revival_time",
    "TridiagonalHamiltonian",
    "EigenSolution",
    "assemble",
    "lowest_eigenpairs",
    "eigenvalue_count_below",
    "DEFAULT_SEED",
    "SpectralState",
    "CorrelationTrace",
    "HopEvent",
    "HopDetection",
    "project",
    "evolve",
    "autocorrelation",
    "well_correlation",
    "any_well_trace",
    "probability_in_well",
    "detect_hops",
    "SignPattern",
    "localized_state",
    "table_pattern",
    "best_sign_pattern",
    "two_well_hop_period",
    "inverse_barrier_height",
    "InverseDesignResult",
    "ScenarioConfig",
    "InitialStateSpec",
    "config_from_dict",
    "load_config",
    "run_scenario",
    "sweep",
    "MultiwellError",
    "GridMismatchError",
    "DegenerateStateError",
    "GeometryError",
    "DomainError",
    "TruncationError",
    "BasisMismatchError",
    "InvalidBasisError",
    "ConvergenceError",
    "DesignError",
    "BracketError",
    "NonMonotonicError",
    "ConfigError",
]
