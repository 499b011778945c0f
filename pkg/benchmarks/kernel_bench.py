#!/usr/bin/env python3
"""Benchmark: compiled tridiagonal kernels vs the pure-Python reference.

Times the two kernel stages of a realistic eigensolve (Sturm bisection for
the lowest k eigenvalues, then inverse iteration for each vector) on the
two-well scenario Hamiltonian at several grid sizes.

Run:  python benchmarks/kernel_bench.py [--points 1000 2000 4000] [--k 6]
"""

import argparse
import timeit

import numpy as np

from multiwell import Grid, MultiWellSpec, UnitSystem, assemble, build_multiwell, sample
from multiwell.kernels import _ref

try:
    from multiwell.kernels import _tridiag
except ImportError:
    _tridiag = None

EPS = np.finfo(np.float64).eps


def problem(points: int):
    grid = Grid(length=100.0, points=points)
    profile = build_multiwell(MultiWellSpec(100.0, 2, 4.2, 0.5))
    units = UnitSystem(effective_mass_ratio=0.067)
    ham = assemble(sample(profile, grid), grid, units)
    return np.asarray(ham.diagonal), ham.off_diagonal


def solve_with(impl, diag, off, k: int):
    gl, gu = impl.gershgorin_bounds(diag, off)
    scale = max(abs(gl), abs(gu))
    pivmin = max(np.finfo(np.float64).tiny, EPS * EPS * scale)
    lam = impl.bisect_lowest(diag, off, k, 1e-12, pivmin)
    target = max(1e-10 * abs(lam[-1]), 8 * EPS * scale)
    rng = np.random.default_rng(1729)
    vectors = np.zeros((0, diag.shape[0]))
    for i in range(k):
        v, _, _ = impl.inverse_iteration(
            diag, off, float(lam[i]), rng.standard_normal(diag.shape[0]),
            vectors, target, 1e-12, 50,
        )
        vectors = np.vstack([vectors, v])
    return lam, vectors


def time_impl(impl, diag, off, k, repeats=3):
    best = min(
        timeit.repeat(lambda: solve_with(impl, diag, off, k), number=1, repeat=repeats)
    )
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", nargs="+", type=int, default=[1000, 2000, 4000])
    parser.add_argument("--k", type=int, default=6)
    args = parser.parse_args()

    if _tridiag is None:
        print("compiled kernels not built; timing the pure-Python reference only\n")

    header = f"{'points':>8} {'python (ms)':>14}"
    if _tridiag is not None:
        header += f" {'compiled (ms)':>14} {'speedup':>9}"
    print(header)
    for points in args.points:
        diag, off = problem(points)
        t_ref = time_impl(_ref, diag, off, args.k)
        line = f"{points:>8} {1e3 * t_ref:>14.2f}"
        if _tridiag is not None:
            lam_c, _ = solve_with(_tridiag, diag, off, args.k)
            lam_r, _ = solve_with(_ref, diag, off, args.k)
            assert np.allclose(lam_c, lam_r, rtol=0, atol=1e-12 * max(abs(lam_r[-1]), 1.0))
            t_c = time_impl(_tridiag, diag, off, args.k)
            line += f" {1e3 * t_c:>14.2f} {t_ref / t_c:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
