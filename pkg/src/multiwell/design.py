"""Designing well-localized states and inverting barrier height.

An N-well structure's lowest N eigenstates span a basis in which equal-
magnitude coefficients s_n / sqrt(N), s_n in {+1, -1}, can concentrate the
probability in a single well; which sign pattern targets which well is found
by brute force over the 2^(N-1) gauge-fixed patterns (the first sign is
pinned to +1 since a global flip changes nothing).  For six wells a reference
table of patterns is shipped and validated against the brute force rather
than trusted.

The inverse problem (what barrier height realizes a wanted hop period) is
solved by bisection: every evaluation is a full eigensolve and the period is
monotone in the height over practical brackets, which is verified, not
assumed.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import Grid
from .dynamics import SpectralState, evolve, probability_in_well
from .errors import BracketError, DomainError, InvalidBasisError, NonMonotonicError
from .potential import MultiWellSpec, PotentialProfile, build_multiwell, sample
from .spectral import DEFAULT_SEED, EigenSolution, assemble, lowest_eigenpairs
from .units import UnitSystem

#: Sign choices that localize the state in each well of the six-well
#: structure (row k targets well k+1); every coefficient carries 1/sqrt(6).
SIX_WELL_PATTERNS = (
    (1, 1, 1, 1, 1, 1),
    (1, 1, 1, -1, -1, -1),
    (1, 1, -1, -1, 1, 1),
    (1, -1, -1, 1, 1, -1),
    (1, -1, 1, 1, -1, 1),
    (1, -1, 1, -1, 1, -1),
)


@dataclass(frozen=True, slots=True)
class SignPattern:
    """Signs over the lowest N states, gauge-fixed to signs[0] = +1."""

    signs: tuple
    target_well: int

    def __post_init__(self):
        if not self.signs:
            raise DomainError("empty sign pattern")
        if any(s not in (-1, 1) for s in self.signs):
            raise DomainError(f"signs must be +1 or -1, got {self.signs}")
        if self.signs[0] != 1:
            raise DomainError("signs[0] must be +1 (global-phase gauge)")
        if not 0 <= self.target_well < len(self.signs):
            raise DomainError(
                f"target well {self.target_well} out of range for {len(self.signs)} signs"
            )

    @property
    def magnitude(self) -> float:
        """1/sqrt(N), the common coefficient magnitude."""
        return 1.0 / np.sqrt(len(self.signs))


def localized_state(basis: EigenSolution, pattern: SignPattern) -> SpectralState:
    """Coefficients signs[n]/sqrt(N) over the lowest N states, zero beyond."""
    n = len(pattern.signs)
    if basis.size < n:
        raise DomainError(f"basis holds {basis.size} states, pattern needs {n}")
    coeffs = np.zeros(basis.size, dtype=np.complex128)
    coeffs[:n] = np.array(pattern.signs, dtype=np.float64) * pattern.magnitude
    return SpectralState(
        basis=basis,
        coefficients=coeffs,
        label=f"well-{pattern.target_well + 1}",
    )


def table_pattern(well_count: int, target_well: int) -> SignPattern:
    """Reference pattern for the six-well structure (0-based target well)."""
    if well_count != 6:
        raise DomainError(f"reference patterns exist for 6 wells only, got {well_count}")
    if not 0 <= target_well < 6:
        raise DomainError(f"target well {target_well} out of range 0..5")
    return SignPattern(signs=SIX_WELL_PATTERNS[target_well], target_well=target_well)


def _pattern_order_key(signs: tuple) -> tuple:
    # lexicographic with +1 ordered before -1
    return tuple(0 if s == 1 else 1 for s in signs)


def best_sign_pattern(
    basis: EigenSolution,
    profile: PotentialProfile,
    target_well: int,
) -> SignPattern:
    """Brute-force the 2^(N-1) gauge-fixed patterns for one target well.

    Returns the pattern maximizing the target-well probability of the
    reconstructed state; ties break to the lexicographically smallest
    pattern (+1 ordered before -1).
    """
    n = profile.spec.well_count
    if basis.size < n:
        raise DomainError(f"basis holds {basis.size} states, need {n}")
    if not 0 <= target_well < n:
        raise DomainError(f"target well {target_well} out of range for {n} wells")
    best = None
    best_prob = -1.0
    for tail in product((1, -1), repeat=n - 1):
        signs = (1,) + tail
        pattern = SignPattern(signs=signs, target_well=target_well)
        psi = evolve(localized_state(basis, pattern), 0.0)
        prob = probability_in_well(psi, profile, target_well)
        if prob > best_prob:
            best, best_prob = pattern, prob
    return best


def pattern_probability(
    basis: EigenSolution, profile: PotentialProfile, pattern: SignPattern
) -> float:
    """Target-well probability of the pattern's reconstructed state at t=0."""
    psi = evolve(localized_state(basis, pattern), 0.0)
    return probability_in_well(psi, profile, pattern.target_well)


def two_well_hop_period(basis: EigenSolution) -> float:
    """First full-transfer time pi hbar / (E2 - E1) of the doublet, fs."""
    if basis.size < 2:
        raise InvalidBasisError("need at least two states for a hop period")
    gap = float(basis.energies[1] - basis.energies[0])
    if gap <= 0.0:
        raise InvalidBasisError(f"doublet splitting must be positive, got {gap}")
    return np.pi * basis.units.hbar / gap


@dataclass(frozen=True, slots=True)
class InverseDesignResult:
    """Outcome of the barrier-height inversion."""

    barrier_height: float
    achieved_period: float
    target_period: float
    evaluations: int


def inverse_barrier_height(
    geometry: MultiWellSpec,
    target_period: float,
    bracket: tuple,
    grid_points: int,
    units: UnitSystem,
    seed: int = DEFAULT_SEED,
    rel_tol: float = 1.0e-3,
    max_iter: int = 80,
) -> InverseDesignResult:
    """Find the barrier height whose two-well hop period hits the target.

    ``geometry`` supplies everything but the height (its own height field is
    ignored).  The period must be monotone increasing over the bracket
    (checked at the endpoints and midpoint) and the target must lie between
    the endpoint periods; bisection then runs until the achieved period is
    within ``rel_tol`` of the target.
    """
    if geometry.well_count != 2:
        raise DomainError("inverse design is defined for two-well geometries")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 <= lo < hi):
        raise DomainError(f"bracket must satisfy 0 <= lo < hi, got {bracket}")
    if target_period <= 0.0:
        raise DomainError(f"target period must be positive, got {target_period}")

    grid = Grid(length=geometry.total_length, points=grid_points)
    evaluations = 0

    def period_at(height: float) -> float:
        nonlocal evaluations
        spec = MultiWellSpec(
            total_length=geometry.total_length,
            well_count=2,
            barrier_width=geometry.barrier_width,
            barrier_height=height,
            well_depth_reference=geometry.well_depth_reference,
        )
        profile = build_multiwell(spec)
        ham = assemble(sample(profile, grid), grid, units)
        basis = lowest_eigenpairs(ham, 2, seed=seed)
        evaluations += 1
        return two_well_hop_period(basis)

    p_lo = period_at(lo)
    p_hi = period_at(hi)
    p_mid = period_at(0.5 * (lo + hi))
    if not (p_lo < p_mid < p_hi):
        raise NonMonotonicError(
            f"period is not monotone increasing over [{lo}, {hi}] eV: "
            f"{p_lo:.6g}, {p_mid:.6g}, {p_hi:.6g} fs"
        )
    if not (p_lo <= target_period <= p_hi):
        raise BracketError(
            f"target period {target_period:.6g} fs lies outside the achievable "
            f"range [{p_lo:.6g}, {p_hi:.6g}] fs for heights [{lo}, {hi}] eV"
        )

    height_lo, height_hi = lo, hi
    height = 0.5 * (lo + hi)
    period = p_mid
    for _ in range(max_iter):
        if abs(period - target_period) / target_period < rel_tol:
            break
        if period < target_period:
            height_lo = height
        else:
            height_hi = height
        height = 0.5 * (height_lo + height_hi)
        period = period_at(height)
    else:
        raise BracketError(
            f"bisection failed to reach {rel_tol:.1e} relative period accuracy "
            f"within {max_iter} eigensolves"
        )
    return InverseDesignResult(
        barrier_height=height,
        achieved_period=period,
        target_period=target_period,
        evaluations=evaluations,
    )
