"""Pure-Python/numpy kernels for symmetric tridiagonal eigenproblems.

This module mirrors the compiled extension ``_tridiag`` operation for
operation; it is the import-time fallback when the extension is missing and
the reference the extension is tested against.  The matrices here always have
a constant off-diagonal (the tight-binding hopping term), which the
signatures exploit.

Algorithms: Sturm-sequence bisection for the lowest eigenvalues, then
Wilkinson-style inverse iteration (tridiagonal solve with pivot flooring)
with per-iteration orthogonalization against supplied cluster vectors.
"""

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


def sturm_counts(diag: np.ndarray, off: float, shifts: np.ndarray, pivmin: float) -> np.ndarray:
    """Number of eigenvalues below each shift, via Sturm sequences.

    The count is the number of negative pivots in the LDL^T factorization of
    (T - shift I).  Any pivot with magnitude below ``pivmin`` is replaced by
    -pivmin *after* it is computed, so an exact hit is forced negative and
    counted; flooring before the division instead would silently drop such
    eigenvalues from the count.
    """
    diag = np.asarray(diag, dtype=np.float64)
    shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    off_sq = off * off
    q = diag[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    counts = (q < 0.0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        q = (diag[i] - shifts) - off_sq / q
        small = np.abs(q) < pivmin
        if small.any():
            q = np.where(small, -pivmin, q)
        counts += q < 0.0
    return counts


def gershgorin_bounds(diag: np.ndarray, off: float) -> tuple:
    """(lower, upper) bounds containing the whole spectrum."""
    diag = np.asarray(diag, dtype=np.float64)
    r = np.full(diag.shape[0], 2.0 * abs(off))
    r[0] = r[-1] = abs(off)
    return float(np.min(diag - r)), float(np.max(diag + r))


def bisect_lowest(diag: np.ndarray, off: float, k: int, rel_tol: float, pivmin: float) -> np.ndarray:
    """The k algebraically smallest eigenvalues, ascending, by bisection.

    Each index is bracketed independently with the Sturm count; the interval
    for index j shrinks until its width falls below
    max(rel_tol * |mid|, absolute floor), the floor being a few eps times the
    spectral scale (intervals cannot shrink meaningfully further in float64).
    """
    diag = np.asarray(diag, dtype=np.float64)
    gl, gu = gershgorin_bounds(diag, off)
    abs_floor = 4.0 * _EPS * max(abs(gl), abs(gu), 1.0e-300)
    lo = np.full(k, gl)
    hi = np.full(k, gu)
    targets = np.arange(1, k + 1)
    for _ in range(220):
        width = hi - lo
        mid = 0.5 * (lo + hi)
        tol = np.maximum(rel_tol * np.abs(mid), abs_floor)
        active = width > tol
        if not active.any():
            break
        counts = sturm_counts(diag, off, mid[active], pivmin)
        above = counts >= targets[active]
        idx = np.nonzero(active)[0]
        hi[idx[above]] = mid[active][above]
        lo[idx[~above]] = mid[active][~above]
    return 0.5 * (lo + hi)


def _thomas_solve(diag_shifted: np.ndarray, off: float, rhs: np.ndarray, floor: float) -> np.ndarray:
    """Solve (T - shift I) y = rhs with pivot magnitudes floored at ``floor``."""
    n = diag_shifted.shape[0]
    c = np.empty(n - 1)
    g = np.empty(n)
    piv = diag_shifted[0]
    if abs(piv) < floor:
        piv = floor if piv >= 0.0 else -floor
    g[0] = rhs[0] / piv
    for i in range(1, n):
        c[i - 1] = off / piv
        piv = diag_shifted[i] - off * c[i - 1]
        if abs(piv) < floor:
            piv = floor if piv >= 0.0 else -floor
        g[i] = (rhs[i] - off * g[i - 1]) / piv
    y = np.empty(n)
    y[n - 1] = g[n - 1]
    for i in range(n - 2, -1, -1):
        y[i] = g[i] - c[i] * y[i + 1]
    return y


def inverse_iteration(
    diag: np.ndarray,
    off: float,
    shift: float,
    seed_vector: np.ndarray,
    ortho: np.ndarray,
    resid_target: float,
    stab_tol: float,
    max_iter: int,
) -> tuple:
    """Eigenvector for the eigenvalue nearest ``shift`` by inverse iteration.

    Each sweep solves the shifted system, re-orthogonalizes against the rows
    of ``ortho`` (converged members of the same near-degenerate cluster) and
    renormalizes.  Iteration stops once the residual meets ``resid_target``
    AND the direction has stabilized to ``stab_tol`` (the second condition
    keeps near-degenerate pairs from being accepted while still rotating
    inside their two-dimensional subspace, which would spoil parity and
    orthogonality downstream).

    Returns (unit 2-norm vector, residual 2-norm, iterations used).
    """
    diag = np.asarray(diag, dtype=np.float64)
    n = diag.shape[0]
    ds = diag - shift
    floor = _EPS * (float(np.max(np.abs(ds))) + 2.0 * abs(off))
    if floor == 0.0:
        floor = np.finfo(np.float64).tiny
    v = np.asarray(seed_vector, dtype=np.float64).copy()
    for row in ortho:
        v -= np.dot(row, v) * row
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        v = np.ones(n)
        nv = float(np.linalg.norm(v))
    v /= nv

    resid = np.inf
    for it in range(1, max_iter + 1):
        y = _thomas_solve(ds, off, v, floor)
        for row in ortho:
            y -= np.dot(row, y) * row
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            y = v.copy()
            ny = 1.0
        y /= ny
        drift = 1.0 - abs(float(np.dot(y, v)))
        v = y
        r = ds * v
        r[:-1] += off * v[1:]
        r[1:] += off * v[:-1]
        resid = float(np.linalg.norm(r))
        if it >= 2 and resid <= resid_target and drift <= stab_tol:
            return v, resid, it
    return v, resid, max_iter
