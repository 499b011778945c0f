# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for symmetric tridiagonal eigenproblems.

Same contract as the pure-Python reference module ``_ref``: Sturm-sequence
bisection for the lowest eigenvalues and inverse iteration with pivot-floored
tridiagonal solves.  These inner loops dominate every eigensolve, which is
why they live in C.
"""

from libc.math cimport fabs, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _EPS = 2.220446049250313e-16
cdef double _TINY = 2.2250738585072014e-308


cdef long _sturm_count_one(const double[::1] diag, double off_sq, double shift,
                           double pivmin) nogil:
    # pivots are floored to -pivmin AFTER each update so exact hits count
    cdef long n = diag.shape[0]
    cdef long count = 0
    cdef long i
    cdef double q = diag[0] - shift
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = (diag[i] - shift) - off_sq / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def sturm_counts(diag, double off, shifts, double pivmin):
    """Number of eigenvalues strictly below each shift."""
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] s = np.atleast_1d(np.ascontiguousarray(shifts, dtype=np.float64))
    out = np.empty(s.shape[0], dtype=np.int64)
    cdef long[::1] o = out
    cdef double off_sq = off * off
    cdef Py_ssize_t j
    with nogil:
        for j in range(s.shape[0]):
            o[j] = _sturm_count_one(d, off_sq, s[j], pivmin)
    return out


def gershgorin_bounds(diag, double off):
    """(lower, upper) bounds containing the whole spectrum."""
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef long n = d.shape[0]
    cdef double r0 = fabs(off)
    cdef double lo, hi, r
    cdef long i
    lo = d[0] - r0
    hi = d[0] + r0
    for i in range(1, n):
        r = 2.0 * r0 if i < n - 1 else r0
        if d[i] - r < lo:
            lo = d[i] - r
        if d[i] + r > hi:
            hi = d[i] + r
    return lo, hi


def bisect_lowest(diag, double off, long k, double rel_tol, double pivmin):
    """The k algebraically smallest eigenvalues, ascending, by bisection."""
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double off_sq = off * off
    cdef double gl, gu
    gl, gu = gershgorin_bounds(diag, off)
    cdef double abs_floor = 4.0 * _EPS * max(fabs(gl), fabs(gu), 1.0e-300)
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] lam = out
    cdef double lo, hi, mid, tol
    cdef long j, it, target
    with nogil:
        for j in range(k):
            target = j + 1
            lo = gl
            hi = gu
            for it in range(220):
                mid = 0.5 * (lo + hi)
                tol = rel_tol * fabs(mid)
                if tol < abs_floor:
                    tol = abs_floor
                if hi - lo <= tol:
                    break
                if _sturm_count_one(d, off_sq, mid, pivmin) >= target:
                    hi = mid
                else:
                    lo = mid
            lam[j] = 0.5 * (lo + hi)
    return out


def inverse_iteration(diag, double off, double shift, seed_vector, ortho,
                      double resid_target, double stab_tol, long max_iter):
    """Eigenvector nearest ``shift``; see the reference module for semantics.

    Returns (unit 2-norm vector, residual 2-norm, iterations used).
    """
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef long n = d.shape[0]
    v_arr = np.array(seed_vector, dtype=np.float64, copy=True)
    cdef double[::1] v = v_arr
    cdef const double[:, ::1] q = np.ascontiguousarray(
        np.atleast_2d(ortho) if len(ortho) else np.zeros((0, n)), dtype=np.float64)
    cdef long m = q.shape[0]

    ds_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] ds = ds_arr
    cdef double[::1] c = np.empty(n - 1, dtype=np.float64)
    cdef double[::1] g = np.empty(n, dtype=np.float64)
    cdef double[::1] y = np.empty(n, dtype=np.float64)

    cdef double floor = 0.0
    cdef double piv, nv, dot, drift, resid, r
    cdef long i, j, it, iters

    with nogil:
        for i in range(n):
            ds[i] = d[i] - shift
            if fabs(ds[i]) > floor:
                floor = fabs(ds[i])
        floor = _EPS * (floor + 2.0 * fabs(off))
        if floor == 0.0:
            floor = _TINY

        # project the seed off the cluster block, normalize
        for j in range(m):
            dot = 0.0
            for i in range(n):
                dot += q[j, i] * v[i]
            for i in range(n):
                v[i] -= dot * q[j, i]
        nv = 0.0
        for i in range(n):
            nv += v[i] * v[i]
        nv = sqrt(nv)
        if nv == 0.0:
            for i in range(n):
                v[i] = 1.0
            nv = sqrt(<double> n)
        for i in range(n):
            v[i] /= nv

        resid = 1.0e308
        iters = max_iter
        for it in range(1, max_iter + 1):
            # Thomas solve (T - shift) y = v with floored pivots
            piv = ds[0]
            if fabs(piv) < floor:
                piv = floor if piv >= 0.0 else -floor
            g[0] = v[0] / piv
            for i in range(1, n):
                c[i - 1] = off / piv
                piv = ds[i] - off * c[i - 1]
                if fabs(piv) < floor:
                    piv = floor if piv >= 0.0 else -floor
                g[i] = (v[i] - off * g[i - 1]) / piv
            y[n - 1] = g[n - 1]
            for i in range(n - 2, -1, -1):
                y[i] = g[i] - c[i] * y[i + 1]

            for j in range(m):
                dot = 0.0
                for i in range(n):
                    dot += q[j, i] * y[i]
                for i in range(n):
                    y[i] -= dot * q[j, i]

            nv = 0.0
            for i in range(n):
                nv += y[i] * y[i]
            nv = sqrt(nv)
            if nv == 0.0:
                for i in range(n):
                    y[i] = v[i]
                nv = 1.0
            dot = 0.0
            for i in range(n):
                y[i] /= nv
                dot += y[i] * v[i]
            drift = 1.0 - fabs(dot)
            for i in range(n):
                v[i] = y[i]

            # residual of (T - shift) v
            resid = 0.0
            for i in range(n):
                r = ds[i] * v[i]
                if i > 0:
                    r += off * v[i - 1]
                if i < n - 1:
                    r += off * v[i + 1]
                resid += r * r
            resid = sqrt(resid)
            if it >= 2 and resid <= resid_target and drift <= stab_tol:
                iters = it
                break

    return v_arr, resid, iters
