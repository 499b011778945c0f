"""Closed-form results for the hard-wall box: energies, states, revival time.

These are the exact references the numerical pipeline is checked against.
The box of length L with zero interior potential has

    E_n   = (hbar^2 / 2m) * pi^2 n^2 / L^2
    phi_n = sqrt(2/L) * sin(n pi x / L)
    T_rev = 4 m L^2 / (hbar pi)

and T_rev * E_1 = 2 pi hbar identically, which fixes the scaled-time axis
tau = t / T_rev used throughout the dynamics code.
"""

import hashlib

import numpy as np

from .core import Grid, Wavefunction, normalize
from .errors import DomainError
from .spectral import EigenSolution
from .units import DEFAULT_UNITS, UnitSystem


def infinite_well_energy(n: int, length: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """n-th bound-state energy of the hard-wall box, eV (n is 1-based)."""
    if n < 1:
        raise DomainError(f"quantum number must be >= 1, got {n}")
    if length <= 0:
        raise DomainError(f"length must be positive, got {length}")
    return units.hbar_sq_over_two_mass * (np.pi * n / length) ** 2


def infinite_well_state(n: int, grid: Grid) -> Wavefunction:
    """sqrt(2/L) sin(n pi x / L) sampled at the interior nodes, renormalized.

    The renormalization is under the discrete inner product, so sampled
    states are exactly unit norm on the grid (the continuum normalization
    sqrt(2/L) is only the starting point).
    """
    if n < 1:
        raise DomainError(f"quantum number must be >= 1, got {n}")
    x = grid.positions()
    amps = np.sqrt(2.0 / grid.length) * np.sin(n * np.pi * x / grid.length)
    return normalize(Wavefunction(grid, amps.astype(np.complex128)))


def revival_time(length: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """Full revival period 4 m L^2 / (hbar pi) of the box, fs.

    Satisfies revival_time * infinite_well_energy(1) == 2 pi hbar.
    """
    if length <= 0:
        raise DomainError(f"length must be positive, got {length}")
    return 2.0 * length**2 * units.hbar / (units.hbar_sq_over_two_mass * np.pi)


def infinite_well_basis(grid: Grid, k: int, units: UnitSystem = DEFAULT_UNITS) -> EigenSolution:
    """Closed-form eigenbasis of the box packaged like a numerical solve.

    Energies are the exact quadratic spectrum; vectors are the sampled sine
    states orthonormalized under the discrete product (sampled sines are
    already exactly orthogonal on a uniform grid, so this is just the norm).
    Useful as the drop-in oracle for dynamics built on the flat profile.
    """
    if not 1 <= k <= grid.points:
        raise DomainError(f"k={k} out of range 1..{grid.points}")
    energies = np.array(
        [infinite_well_energy(n, grid.length, units) for n in range(1, k + 1)]
    )
    vectors = np.empty((grid.points, k), dtype=np.float64)
    for n in range(1, k + 1):
        state = infinite_well_state(n, grid)
        vectors[:, n - 1] = state.amplitudes.real * np.sqrt(grid.spacing)
    tag = hashlib.sha256()
    tag.update(b"analytic-infinite-well")
    tag.update(np.float64(grid.length).tobytes())
    tag.update(np.int64(grid.points).tobytes())
    tag.update(np.float64(units.effective_mass_ratio).tobytes())
    tag.update(np.int64(k).tobytes())
    return EigenSolution(
        energies=energies,
        vectors=vectors,
        grid=grid,
        units=units,
        fingerprint=tag.hexdigest(),
        residuals=np.zeros(k),
        iterations=np.zeros(k, dtype=np.int64),
    )
