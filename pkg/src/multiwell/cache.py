"""Eigen-solution cache: one npz file per solve fingerprint.

A loaded record is never trusted: orthonormality and residuals are
re-verified against the freshly assembled Hamiltonian before use, and any
failure simply invalidates the entry (the caller recomputes and overwrites).
Writes are atomic (temp file + rename).
"""

import os
import tempfile

import numpy as np

from .spectral import (
    RESIDUAL_REL_LIMIT,
    EigenSolution,
    TridiagonalHamiltonian,
)

CACHE_VERSION = 1
ENV_CACHE_DIR = "MULTIWELL_CACHE_DIR"


def cache_path(cache_dir: str, fingerprint: str) -> str:
    return os.path.join(cache_dir, f"{fingerprint}.npz")


def store(cache_dir: str, solution: EigenSolution) -> str:
    """Persist a solution atomically; returns the file path."""
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(cache_dir, solution.fingerprint)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            np.savez(
                fh,
                version=np.int64(CACHE_VERSION),
                fingerprint=np.str_(solution.fingerprint),
                energies=solution.energies,
                vectors=solution.vectors,
                residuals=solution.residuals,
                iterations=solution.iterations,
                grid_length=np.float64(solution.grid.length),
                grid_points=np.int64(solution.grid.points),
                effective_mass_ratio=np.float64(solution.units.effective_mass_ratio),
            )
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load(cache_dir: str, fingerprint: str, ham: TridiagonalHamiltonian, k: int):
    """Load and re-verify a record; returns EigenSolution or None.

    None means "absent or invalid": wrong version, mismatched problem,
    orthonormality off by more than 1e-10, or residuals beyond the solver's
    1e-8 * E_K gate.
    """
    path = cache_path(cache_dir, fingerprint)
    if not os.path.exists(path):
        return None
    try:
        with np.load(path, allow_pickle=False) as data:
            if int(data["version"]) != CACHE_VERSION:
                return None
            if str(data["fingerprint"]) != fingerprint:
                return None
            energies = np.asarray(data["energies"], dtype=np.float64)
            vectors = np.asarray(data["vectors"], dtype=np.float64)
            residuals = np.asarray(data["residuals"], dtype=np.float64)
            iterations = np.asarray(data["iterations"], dtype=np.int64)
            grid_length = float(data["grid_length"])
            grid_points = int(data["grid_points"])
            mass_ratio = float(data["effective_mass_ratio"])
    except (OSError, KeyError, ValueError):
        return None

    if (
        energies.shape != (k,)
        or vectors.shape != (ham.grid.points, k)
        or grid_length != ham.grid.length
        or grid_points != ham.grid.points
        or mass_ratio != ham.units.effective_mass_ratio
    ):
        return None

    gram = vectors.T @ vectors
    if np.max(np.abs(gram - np.eye(k))) > 1.0e-10:
        return None
    e_top = float(np.max(np.abs(energies)))
    for i in range(k):
        r = ham.apply(vectors[:, i]) - energies[i] * vectors[:, i]
        if float(np.linalg.norm(r)) > RESIDUAL_REL_LIMIT * e_top:
            return None

    return EigenSolution(
        energies=energies,
        vectors=vectors,
        grid=ham.grid,
        units=ham.units,
        fingerprint=fingerprint,
        residuals=residuals,
        iterations=iterations,
    )
