"""Tight-binding Hamiltonian assembly and its lowest eigenpairs.

The second-order stencil on the interior grid gives the real symmetric
tridiagonal matrix

    H[i, i]   = 2 t + V_i,   t = hbar^2 / (2 m h^2)
    H[i, i+1] = -t

whose truncation at the array ends encodes the hard walls.  Only a handful of
low eigenpairs are ever needed, so the solver brackets each eigenvalue with
Sturm-sequence bisection and refines the vector with inverse iteration; both
live in the kernels subpackage (compiled when available).
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import Grid, Wavefunction
from .errors import ConvergenceError, DomainError, GridMismatchError, InvalidBasisError
from .units import DEFAULT_UNITS, UnitSystem

_EPS = float(np.finfo(np.float64).eps)

#: Bisection interval target, relative to the eigenvalue magnitude.
BISECTION_REL_TOL = 1.0e-12
#: Inverse-iteration residual goal, relative to the largest requested energy.
RESIDUAL_REL_TARGET = 1.0e-10
#: Hard residual gate on the returned eigenpairs, relative to E_K.
RESIDUAL_REL_LIMIT = 1.0e-8
#: Relative gap below which neighbouring eigenvalues count as one cluster.
CLUSTER_REL_GAP = 1.0e-10
#: Inverse iteration must also stop rotating by more than this between
#: sweeps; keeps barely-split doublets from being accepted mid-rotation.
DIRECTION_STABILITY_TOL = 1.0e-12
MAX_INVERSE_ITERATIONS = 50

#: Default seed for inverse-iteration starting vectors (documented; settable
#: per scenario so repeated runs are bit-reproducible).
DEFAULT_SEED = 1729


@dataclass(frozen=True, eq=False)
class TridiagonalHamiltonian:
    """Assembled operator: per-node diagonal, constant off-diagonal, grid."""

    diagonal: np.ndarray = field(repr=False)
    off_diagonal: float
    grid: Grid
    units: UnitSystem

    def __post_init__(self):
        d = np.ascontiguousarray(self.diagonal, dtype=np.float64)
        d.setflags(write=False)
        object.__setattr__(self, "diagonal", d)

    @property
    def hopping(self) -> float:
        """t = hbar^2/(2 m h^2) in eV (the off-diagonal is -t)."""
        return -self.off_diagonal

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(np.float64(self.grid.length).tobytes())
        h.update(np.int64(self.grid.points).tobytes())
        h.update(np.float64(self.units.hbar).tobytes())
        h.update(np.float64(self.units.hbar_sq_over_two_me).tobytes())
        h.update(np.float64(self.units.effective_mass_ratio).tobytes())
        h.update(np.float64(self.off_diagonal).tobytes())
        h.update(self.diagonal.tobytes())
        return h.hexdigest()

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product H @ vec (vec indexed like the diagonal)."""
        out = self.diagonal * vec
        out[:-1] += self.off_diagonal * vec[1:]
        out[1:] += self.off_diagonal * vec[:-1]
        return out


@dataclass(frozen=True, eq=False)
class EigenSolution:
    """Lowest-K energies (strictly ascending) with orthonormal eigenvectors.

    ``vectors`` holds the states column-wise with unit 2-norm; the
    Wavefunction view rescales by 1/sqrt(spacing) so states are unit norm
    under the discrete inner product.
    """

    energies: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)  # (points, K), unit 2-norm columns
    grid: Grid
    units: UnitSystem
    fingerprint: str
    residuals: np.ndarray = field(repr=False)
    iterations: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("energies", "vectors", "residuals", "iterations"):
            arr = np.ascontiguousarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return int(self.energies.shape[0])

    def state(self, n: int) -> Wavefunction:
        """n-th eigenstate (0-based) as a discrete-normalized Wavefunction."""
        if not 0 <= n < self.size:
            raise DomainError(f"state index {n} out of range for K={self.size}")
        amps = self.vectors[:, n] / np.sqrt(self.grid.spacing)
        return Wavefunction(self.grid, amps.astype(np.complex128))

    @property
    def states(self) -> tuple:
        return tuple(self.state(n) for n in range(self.size))

    def revival_time(self) -> float:
        """Infinite-well revival period for this grid length and mass, fs."""
        u = self.units
        return 2.0 * self.grid.length**2 * u.hbar / (u.hbar_sq_over_two_mass * np.pi)


def assemble(
    potential_samples: np.ndarray,
    grid: Grid,
    units: UnitSystem = DEFAULT_UNITS,
) -> TridiagonalHamiltonian:
    """Build the tridiagonal Hamiltonian for sampled potential values (eV)."""
    v = np.ascontiguousarray(potential_samples, dtype=np.float64)
    if v.shape != (grid.points,):
        raise GridMismatchError(
            f"potential sample count {v.shape} does not match grid points ({grid.points},)"
        )
    t = units.hbar_sq_over_two_mass / grid.spacing**2
    return TridiagonalHamiltonian(
        diagonal=2.0 * t + v, off_diagonal=-t, grid=grid, units=units
    )


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    """Flip so the first component with magnitude > 1e-12 is positive."""
    nz = np.nonzero(np.abs(vec) > 1.0e-12)[0]
    if nz.size and vec[nz[0]] < 0.0:
        return -vec
    return vec


def solve_fingerprint(ham: TridiagonalHamiltonian, k: int, seed: int) -> str:
    """Identity of one eigensolve: Hamiltonian content plus k and seed."""
    h = hashlib.sha256()
    h.update(ham.fingerprint().encode())
    h.update(np.int64(k).tobytes())
    h.update(np.int64(seed).tobytes())
    return h.hexdigest()


def lowest_eigenpairs(
    ham: TridiagonalHamiltonian,
    k: int,
    seed: int = DEFAULT_SEED,
) -> EigenSolution:
    """Compute the k smallest eigenvalues and discrete-orthonormal vectors.

    Bisection brackets every eigenvalue to relative width 1e-12 (floored at
    the float64 resolution of the spectral scale); inverse iteration then
    refines each vector, seeding near-degenerate clusters with distinct
    random vectors and re-orthogonalizing inside the cluster.  A final
    two-pass Gram-Schmidt enforces orthonormality; eigenpairs whose residual
    exceeds 1e-8 * E_K are a hard failure.
    """
    n = ham.grid.points
    if not 1 <= k <= n:
        raise DomainError(f"k={k} out of range 1..{n}")

    diag = ham.diagonal
    off = ham.off_diagonal
    gl, gu = kernels.gershgorin_bounds(diag, off)
    scale = max(abs(gl), abs(gu))
    pivmin = max(np.finfo(np.float64).tiny, _EPS * _EPS * scale)

    energies = np.asarray(
        kernels.bisect_lowest(diag, off, k, BISECTION_REL_TOL, pivmin), dtype=np.float64
    )

    e_top = float(np.max(np.abs(energies)))
    resid_target = max(RESIDUAL_REL_TARGET * e_top, 8.0 * _EPS * scale)
    degeneracy_floor = 8.0 * _EPS * scale

    rng = np.random.default_rng(seed)
    vectors = np.empty((k, n), dtype=np.float64)
    residuals = np.empty(k, dtype=np.float64)
    iterations = np.empty(k, dtype=np.int64)

    for i in range(k):
        members = [
            j
            for j in range(i)
            if abs(energies[i] - energies[j])
            <= max(CLUSTER_REL_GAP * max(abs(energies[i]), abs(energies[j])), degeneracy_floor)
        ]
        ortho = vectors[members] if members else np.zeros((0, n))
        seed_vec = rng.standard_normal(n)
        vec, resid, iters = kernels.inverse_iteration(
            diag, off, float(energies[i]), seed_vec, ortho,
            resid_target, DIRECTION_STABILITY_TOL, MAX_INVERSE_ITERATIONS,
        )
        vectors[i] = vec
        residuals[i] = resid
        iterations[i] = iters

    # final hygiene: two rounds of modified Gram-Schmidt, then renormalize
    for _ in range(2):
        for i in range(k):
            for j in range(i):
                vectors[i] -= np.dot(vectors[j], vectors[i]) * vectors[j]
            vectors[i] /= np.linalg.norm(vectors[i])

    for i in range(k):
        vectors[i] = _fix_sign(vectors[i])

    # residuals against the reported energies, in the discrete norm
    for i in range(k):
        r = ham.apply(vectors[i]) - energies[i] * vectors[i]
        residuals[i] = float(np.linalg.norm(r))

    limit = RESIDUAL_REL_LIMIT * e_top
    worst = float(np.max(residuals))
    if worst > limit:
        raise ConvergenceError(
            f"eigenpair residual {worst:.3e} exceeds {limit:.3e} "
            f"(1e-8 * E_{k}) after {MAX_INVERSE_ITERATIONS} iterations"
        )
    if np.any(np.diff(energies) <= 0.0):
        raise InvalidBasisError(
            "computed energies are not strictly increasing; the requested "
            "cluster is numerically degenerate at this grid resolution"
        )

    return EigenSolution(
        energies=energies,
        vectors=np.ascontiguousarray(vectors.T),
        grid=ham.grid,
        units=ham.units,
        fingerprint=solve_fingerprint(ham, k, seed),
        residuals=residuals,
        iterations=iterations,
    )


def eigenvalue_count_below(ham: TridiagonalHamiltonian, threshold: float) -> int:
    """Sturm-sequence count of eigenvalues strictly below ``threshold``."""
    gl, gu = kernels.gershgorin_bounds(ham.diagonal, ham.off_diagonal)
    scale = max(abs(gl), abs(gu))
    pivmin = max(np.finfo(np.float64).tiny, _EPS * _EPS * scale)
    return int(kernels.sturm_counts(ham.diagonal, ham.off_diagonal, np.array([threshold]), pivmin)[0])
