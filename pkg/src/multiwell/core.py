"""Spatial grid, complex wavefunction container and the discrete inner product.

The grid stores only interior nodes: the endpoints x=0 and x=L are hard walls
where the amplitude is identically zero, so they are never represented.  With
this convention the kinetic operator is exactly tridiagonal and the rectangle
rule below is the quadrature under which it is exactly symmetric, making
eigenvectors orthogonal in the same product the dynamics code uses.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStateError, GridMismatchError


@dataclass(frozen=True, slots=True)
class Grid:
    """Uniform 1-D mesh of interior nodes inside hard walls at 0 and L.

    ``spacing`` is derived: L/(points+1), so node i sits at x=(i+1)*spacing.
    """

    length: float
    points: int

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"grid length must be positive, got {self.length}")
        if self.points < 3:
            raise ValueError(f"grid needs at least 3 interior points, got {self.points}")

    @property
    def spacing(self) -> float:
        return self.length / (self.points + 1)

    def positions(self) -> np.ndarray:
        """x coordinates of the interior nodes, nm."""
        return (np.arange(1, self.points + 1, dtype=np.float64)) * self.spacing


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Complex amplitudes at the interior nodes of a grid.

    The container itself does not force normalization (``normalize`` exists
    for that); every factory in this package returns unit-norm states.
    Amplitude arrays are frozen after construction.
    """

    grid: Grid
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.grid.points,):
            raise ValueError(
                f"amplitude count {amps.shape} does not match grid points ({self.grid.points},)"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        """Discrete L2 norm sqrt(sum |psi_i|^2 * spacing)."""
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.spacing))

    def probability_density(self) -> np.ndarray:
        """|psi|^2 at the interior nodes (1/nm)."""
        return np.abs(self.amplitudes) ** 2


def _require_same_grid(a: Grid, b: Grid) -> None:
    if a.length != b.length or a.points != b.points:
        raise GridMismatchError(
            f"grids differ: length {a.length} vs {b.length} nm, "
            f"points {a.points} vs {b.points}"
        )


def inner_product(a: Wavefunction, b: Wavefunction) -> complex:
    """Discrete inner product <a|b> = sum conj(a_i) b_i * spacing.

    Conjugate-symmetric and sesquilinear in the second argument.  Both states
    must live on an identical grid.
    """
    _require_same_grid(a.grid, b.grid)
    return complex(np.vdot(a.amplitudes, b.amplitudes) * a.grid.spacing)


def normalize(psi: Wavefunction) -> Wavefunction:
    """Rescale to unit discrete norm; direction is unchanged.

    Raises DegenerateStateError for the zero vector.
    """
    n = psi.norm()
    if n == 0.0:
        raise DegenerateStateError("cannot normalize a zero wavefunction")
    return Wavefunction(psi.grid, psi.amplitudes / n)
