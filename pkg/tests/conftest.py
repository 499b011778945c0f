"""Shared fixtures: grids, profiles and solved bases reused across the suite.

Eigensolves are session-scoped; everything downstream treats them as
read-only (the package's containers are frozen, so sharing is safe).
"""

import numpy as np
import pytest

from multiwell import (
    Grid,
    MultiWellSpec,
    UnitSystem,
    assemble,
    build_multiwell,
    lowest_eigenpairs,
    sample,
)

#: Scenario mass used for every multi-well case: GaAs-like conduction band.
GAAS = UnitSystem(effective_mass_ratio=0.067)

#: Barrier heights at which the multi-well sign patterns behave like the
#: ideal chain (verified in the design/acceptance tests).
FOUR_WELL_HEIGHT = 0.02
SIX_WELL_HEIGHT = 0.05


def make_profile(well_count, barrier_height, length=100.0, barrier_width=4.2):
    return build_multiwell(
        MultiWellSpec(
            total_length=length,
            well_count=well_count,
            barrier_width=barrier_width if well_count > 1 else 0.0,
            barrier_height=barrier_height if well_count > 1 else 0.0,
        )
    )


def solve_profile(profile, grid, units, k, seed=1729):
    ham = assemble(sample(profile, grid), grid, units)
    return lowest_eigenpairs(ham, k, seed=seed)


@pytest.fixture(scope="session")
def grid2000():
    return Grid(length=100.0, points=2000)


@pytest.fixture(scope="session")
def flat_profile():
    return make_profile(1, 0.0)


@pytest.fixture(scope="session")
def flat_basis(grid2000, flat_profile):
    """Flat 100 nm box, free electron, K=10."""
    return solve_profile(flat_profile, grid2000, UnitSystem(), 10)


@pytest.fixture(scope="session")
def two_well_profile():
    return make_profile(2, 0.5)


@pytest.fixture(scope="session")
def two_well_basis(grid2000, two_well_profile):
    """Two wells, 4.2 nm / 0.5 eV barrier, GaAs-like mass, K=4."""
    return solve_profile(two_well_profile, grid2000, GAAS, 4)


@pytest.fixture(scope="session")
def four_well_profile():
    return make_profile(4, FOUR_WELL_HEIGHT)


@pytest.fixture(scope="session")
def four_well_basis(grid2000, four_well_profile):
    return solve_profile(four_well_profile, grid2000, GAAS, 4)


@pytest.fixture(scope="session")
def six_well_profile():
    return make_profile(6, SIX_WELL_HEIGHT)


@pytest.fixture(scope="session")
def six_well_basis(grid2000, six_well_profile):
    return solve_profile(six_well_profile, grid2000, GAAS, 6)


def random_unit_coefficients(rng, k):
    c = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return c / np.sqrt(np.sum(np.abs(c) ** 2))
