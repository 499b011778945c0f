"""Piecewise-constant multi-well potentials inside hard walls.

A profile with N wells has N equal-width well segments at the reference depth
(default 0 eV) separated by N-1 identical barriers.  Profiles are symmetric
under x -> L - x by construction, and the sampling below preserves that
symmetry bitwise so that eigenvector parity survives to machine precision.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Grid
from .errors import DomainError, GeometryError, GridMismatchError


@dataclass(frozen=True, slots=True)
class MultiWellSpec:
    """Geometry of an N-well structure: total length, well count, barriers."""

    total_length: float
    well_count: int
    barrier_width: float
    barrier_height: float
    well_depth_reference: float = 0.0

    def __post_init__(self):
        if self.total_length <= 0:
            raise GeometryError(f"total_length must be positive, got {self.total_length} nm")
        if not isinstance(self.well_count, int) or self.well_count < 1:
            raise GeometryError(f"well_count must be an integer >= 1, got {self.well_count}")
        if self.well_count > 1 and self.barrier_width <= 0:
            raise GeometryError(f"barrier_width must be positive, got {self.barrier_width} nm")
        if self.barrier_height < 0:
            raise GeometryError(f"barrier_height must be >= 0, got {self.barrier_height} eV")
        occupied = (self.well_count - 1) * self.barrier_width
        if occupied >= self.total_length:
            raise GeometryError(
                f"barrier_width {self.barrier_width} nm: {self.well_count - 1} barriers "
                f"occupy {occupied} nm, leaving no room in {self.total_length} nm"
            )

    @property
    def well_width(self) -> float:
        """Width of each (equal) well, nm."""
        n = self.well_count
        return (self.total_length - (n - 1) * self.barrier_width) / n


@dataclass(frozen=True, slots=True)
class PotentialProfile:
    """A built profile: ordered segments tiling [0, L] plus the well interiors."""

    spec: MultiWellSpec
    segments: tuple  # ((start_nm, end_nm, value_eV), ...)
    well_regions: tuple  # ((start_nm, end_nm), ...), one per well


def build_multiwell(spec: MultiWellSpec) -> PotentialProfile:
    """Lay out alternating well/barrier segments, symmetric about L/2."""
    n = spec.well_count
    w = spec.well_width
    b = spec.barrier_width
    segments = []
    wells = []
    pos = 0.0
    for j in range(n):
        end = spec.total_length if j == n - 1 else pos + w
        segments.append((pos, end, spec.well_depth_reference))
        wells.append((pos, end))
        pos = end
        if j < n - 1:
            segments.append((pos, pos + b, spec.barrier_height))
            pos += b
    return PotentialProfile(spec=spec, segments=tuple(segments), well_regions=tuple(wells))


def _cell_average(segments, x: float, h: float) -> float:
    """Average of the piecewise potential over the cell [x-h/2, x+h/2].

    Cells fully inside one segment return that segment's value exactly; only
    the one or two cells straddling each barrier edge get a weighted value.
    Averaging the edge cells (rather than snapping them to one side) is what
    keeps eigenvalues converging at O(h^2) under grid refinement.
    """
    lo = x - 0.5 * h
    hi = x + 0.5 * h
    for (a, b, v) in segments:
        if lo >= a and hi <= b:
            return v
    acc = 0.0
    for (a, b, v) in segments:
        overlap = min(hi, b) - max(lo, a)
        if overlap > 0.0:
            acc += v * overlap
    return acc / h


def sample(profile: PotentialProfile, grid: Grid) -> np.ndarray:
    """Potential value per interior node, eV.

    The right half of the array is mirrored from the left half, so the
    sampled profile satisfies V[i] == V[points-1-i] exactly.
    """
    if grid.length != profile.spec.total_length:
        raise GridMismatchError(
            f"grid length {grid.length} nm != profile length {profile.spec.total_length} nm"
        )
    h = grid.spacing
    p = grid.points
    values = np.empty(p, dtype=np.float64)
    half = (p + 1) // 2
    for i in range(half):
        values[i] = _cell_average(profile.segments, (i + 1) * h, h)
    for i in range(half, p):
        values[i] = values[p - 1 - i]
    values.setflags(write=False)
    return values


@lru_cache(maxsize=32)
def well_coverage_weights(profile: PotentialProfile, grid: Grid) -> np.ndarray:
    """(well_count, points) fractions of each node cell inside each well.

    Weights are coverage fractions in [0, 1]; summed with the barrier
    fractions they tile every cell exactly, so well plus barrier
    probabilities add to 1 without double counting.  Rows for wells k and
    N+1-k are exact mirrors of each other.
    """
    if grid.length != profile.spec.total_length:
        raise GridMismatchError(
            f"grid length {grid.length} nm != profile length {profile.spec.total_length} nm"
        )
    h = grid.spacing
    p = grid.points
    n = profile.spec.well_count
    weights = np.zeros((n, p), dtype=np.float64)
    for k in range((n + 1) // 2):
        a, b = profile.well_regions[k]
        row = np.zeros(p, dtype=np.float64)
        for i in range(p):
            lo = (i + 1) * h - 0.5 * h
            hi = lo + h
            overlap = min(hi, b) - max(lo, a)
            if overlap > 0.0:
                row[i] = min(1.0, overlap / h)
        if n - 1 - k == k:
            # center well of an odd count: make the row its own mirror
            half = (p + 1) // 2
            row[p - half:] = row[:half][::-1].copy()
        weights[k] = row
        weights[n - 1 - k] = row[::-1]
    weights.setflags(write=False)
    return weights


def well_region(profile: PotentialProfile, well_index: int) -> tuple:
    """(start_nm, end_nm) of a well interior; raises DomainError on bad index."""
    if not 0 <= well_index < profile.spec.well_count:
        raise DomainError(
            f"well index {well_index} out of range for {profile.spec.well_count} wells"
        )
    return profile.well_regions[well_index]
