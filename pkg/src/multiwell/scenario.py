"""Workflow orchestration and artifact emission.

Every workflow is a pure pipeline from a ScenarioConfig to files in an
output directory: CSV for anything tabular (bit-reproducible formatting,
17 significant digits, LF newlines) and JSON for structured reports.  Each
artifact carries the config fingerprint so results can never be mixed up
across configs.
"""

import json
import os
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import __version__ as _pkg_version
from . import cache as cache_mod
from .analytic import revival_time
from .config import ScenarioConfig
from .core import Grid
from .design import (
    SignPattern,
    best_sign_pattern,
    localized_state,
    pattern_probability,
    table_pattern,
    two_well_hop_period,
)
from .dynamics import (
    SpectralState,
    any_well_trace,
    autocorrelation,
    detect_hops,
    evolve,
    well_correlation,
)
from .errors import ConfigError, MultiwellError
from .kernels import implementation
from .potential import build_multiwell, sample
from .spectral import assemble, lowest_eigenpairs, solve_fingerprint


@contextmanager
def _stage(name: str):
    """Tag propagated package errors with the pipeline stage that failed."""
    try:
        yield
    except MultiwellError as exc:
        raise type(exc)(f"[stage {name}] {exc}") from exc


def _fmt(x: float) -> str:
    """Deterministic decimal rendering, 17 significant digits."""
    return f"{float(x):.17g}"


def _write_csv(path, fingerprint: str, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# fingerprint={fingerprint}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class Problem:
    """A config made concrete: grid, profile, Hamiltonian, eigenbasis."""

    config: ScenarioConfig
    grid: Grid
    profile: object
    hamiltonian: object
    basis: object

    @property
    def fingerprint(self) -> str:
        return self.config.fingerprint()


def solve_problem(config: ScenarioConfig, cache_dir: str | None = None) -> Problem:
    """Assemble and diagonalize, consulting the eigen cache when given."""
    grid = Grid(length=config.geometry.total_length, points=config.grid_points)
    with _stage("build-potential"):
        profile = build_multiwell(config.geometry)
        values = sample(profile, grid)
    with _stage("assemble"):
        ham = assemble(values, grid, config.units)
    basis = None
    fp = solve_fingerprint(ham, config.k, config.seed)
    if cache_dir:
        basis = cache_mod.load(cache_dir, fp, ham, config.k)
    if basis is None:
        with _stage("eigensolve"):
            basis = lowest_eigenpairs(ham, config.k, seed=config.seed)
        if cache_dir:
            cache_mod.store(cache_dir, basis)
    return Problem(config=config, grid=grid, profile=profile, hamiltonian=ham, basis=basis)


def initial_state(problem: Problem) -> SpectralState:
    """Materialize the configured initial state over the solved basis."""
    config = problem.config
    ini = config.initial_state
    with _stage("initial-state"):
        if ini.coefficients is not None:
            coeffs = np.zeros(problem.basis.size, dtype=np.complex128)
            coeffs[: len(ini.coefficients)] = ini.coefficients
            weight = float(np.sum(np.abs(coeffs) ** 2))
            if weight <= 0.0:
                raise ConfigError("initial_state.coefficients are all zero")
            coeffs /= np.sqrt(weight)
            return SpectralState(
                basis=problem.basis, coefficients=coeffs, label="custom"
            )
        well = ini.target_well - 1
        if ini.signs is not None:
            pattern = SignPattern(signs=ini.signs, target_well=well)
        else:
            pattern = best_sign_pattern(problem.basis, problem.profile, well)
        return localized_state(problem.basis, pattern)


def well_reference_states(problem: Problem) -> list:
    """One localized reference state per well (brute-force optimal patterns)."""
    with _stage("design-references"):
        refs = []
        for well in range(problem.config.geometry.well_count):
            pattern = best_sign_pattern(problem.basis, problem.profile, well)
            refs.append(localized_state(problem.basis, pattern))
        return refs


def _scenario_metadata(problem: Problem) -> dict:
    basis = problem.basis
    cfg = problem.config
    return {
        "fingerprint": problem.fingerprint,
        "config": {**cfg.physics_dict(), "outputs": list(cfg.outputs or ())},
        "package_version": _pkg_version,
        "kernel_implementation": implementation(),
        "eigensolve_fingerprint": basis.fingerprint,
        "revival_time_fs": revival_time(cfg.geometry.total_length, cfg.units),
        "energies_eV": [float(e) for e in basis.energies],
        "max_residual": float(np.max(basis.residuals)),
        "inverse_iterations": [int(i) for i in basis.iterations],
    }


def write_scenario_metadata(problem: Problem, out_dir: str) -> str:
    path = os.path.join(out_dir, "scenario.json")
    _write_json(path, _scenario_metadata(problem))
    return path


def write_eigenvalues(problem: Problem, out_dir: str) -> str:
    path = os.path.join(out_dir, "eigenvalues.csv")
    rows = (
        (str(n + 1), _fmt(e)) for n, e in enumerate(problem.basis.energies)
    )
    _write_csv(path, problem.fingerprint, "n,energy_eV", rows)
    return path


def write_eigenstates(problem: Problem, out_dir: str) -> list:
    """Sampled potential plus the eigenfunction profiles, for plotting."""
    x = problem.grid.positions()
    k = problem.basis.size
    h = problem.grid.spacing

    pot_path = os.path.join(out_dir, "potential.csv")
    diag = np.asarray(problem.hamiltonian.diagonal)
    values = diag - 2.0 * problem.hamiltonian.hopping
    _write_csv(
        pot_path,
        problem.fingerprint,
        "x_nm,potential_eV",
        ((_fmt(x[i]), _fmt(values[i])) for i in range(x.size)),
    )

    states_path = os.path.join(out_dir, "eigenstates.csv")
    amps = problem.basis.vectors / np.sqrt(h)  # discrete-normalized, real
    header = "x_nm," + ",".join(f"state_{n + 1}" for n in range(k))
    rows = (
        tuple([_fmt(x[i])] + [_fmt(amps[i, n]) for n in range(k)])
        for i in range(x.size)
    )
    _write_csv(states_path, problem.fingerprint, header, rows)
    return [pot_path, states_path]


def _tau_tag(tau: float) -> str:
    return f"{tau:.4f}".replace(".", "p")


def write_snapshots(problem: Problem, state: SpectralState, out_dir: str) -> list:
    """One CSV per requested tau: node position, Re/Im amplitudes, density."""
    paths = []
    x = problem.grid.positions()
    for tau in problem.config.snapshot_taus:
        with _stage("evolve"):
            psi = evolve(state, tau)
        path = os.path.join(out_dir, f"snapshot_tau_{_tau_tag(tau)}.csv")
        rows = (
            (_fmt(x[i]), _fmt(psi.amplitudes[i].real), _fmt(psi.amplitudes[i].imag),
             _fmt(abs(psi.amplitudes[i]) ** 2))
            for i in range(x.size)
        )
        _write_csv(path, problem.fingerprint, "x_nm,real,imag,density_per_nm", rows)
        paths.append(path)
    return paths


def _trace_rows(trace):
    return (
        (_fmt(trace.tau_axis[i]), _fmt(trace.values[i]))
        for i in range(trace.tau_axis.size)
    )


def compute_traces(problem: Problem, state: SpectralState, references: list) -> dict:
    """Autocorrelation, per-well correlations, and the any-well envelope."""
    tau = problem.config.tau_axis()
    with _stage("correlate"):
        traces = {"autocorrelation": autocorrelation(state, tau)}
        well_traces = well_correlation(references, state, tau)
        for ref, trace in zip(references, well_traces):
            traces[ref.label] = trace
        traces["any"] = any_well_trace(well_traces)
    return traces


def write_traces(problem: Problem, traces: dict, out_dir: str) -> list:
    paths = []
    for name, trace in traces.items():
        fname = {
            "autocorrelation": "trace_autocorrelation.csv",
            "any": "trace_any_well.csv",
        }.get(name, f"trace_{name.replace('-', '_')}.csv")
        path = os.path.join(out_dir, fname)
        _write_csv(path, problem.fingerprint, "tau,value", _trace_rows(trace))
        paths.append(path)
    return paths


def hop_report(problem: Problem, traces: dict) -> dict:
    """Peaks and period estimates for every trace, in tau and fs."""
    cfg = problem.config
    t_rev = revival_time(cfg.geometry.total_length, cfg.units)
    report = {
        "fingerprint": problem.fingerprint,
        "threshold": cfg.hop_threshold,
        "threshold_note": (
            "peaks above this level are reported as localization events; "
            "the level is a reporting convention, not a model quantity"
        ),
        "revival_time_fs": t_rev,
        "traces": {},
    }
    with _stage("detect-hops"):
        for name, trace in traces.items():
            detection = detect_hops(trace, cfg.hop_threshold)
            report["traces"][name] = {
                "peaks": [
                    {"tau": e.tau, "value": e.value} for e in detection.events
                ],
                "period_tau": detection.period,
                "period_fs": None if detection.period is None else detection.period * t_rev,
            }
    if cfg.geometry.well_count == 2 and problem.basis.size >= 2:
        report["two_state_hop_period_fs"] = two_well_hop_period(problem.basis)
    return report


def pattern_report(problem: Problem) -> dict:
    """Brute-force best patterns per well; six-well runs also validate the
    reference table and report any disagreement with both probabilities."""
    cfg = problem.config
    n = cfg.geometry.well_count
    report = {"fingerprint": problem.fingerprint, "wells": []}
    with _stage("design-patterns"):
        for well in range(n):
            best = best_sign_pattern(problem.basis, problem.profile, well)
            entry = {
                "well": well + 1,
                "signs": list(best.signs),
                "probability": pattern_probability(problem.basis, problem.profile, best),
            }
            if n == 6:
                ref = table_pattern(6, well)
                ref_prob = pattern_probability(problem.basis, problem.profile, ref)
                entry["reference_signs"] = list(ref.signs)
                entry["reference_probability"] = ref_prob
                entry["matches_reference"] = list(best.signs) == list(ref.signs)
            report["wells"].append(entry)
    return report


def write_pattern_artifacts(problem: Problem, out_dir: str) -> list:
    report = pattern_report(problem)
    json_path = os.path.join(out_dir, "patterns.json")
    _write_json(json_path, report)
    csv_path = os.path.join(out_dir, "patterns.csv")
    rows = (
        (
            str(entry["well"]),
            " ".join(f"{s:+d}" for s in entry["signs"]),
            _fmt(entry["probability"]),
        )
        for entry in report["wells"]
    )
    _write_csv(csv_path, problem.fingerprint, "well,signs,probability", rows)
    return [json_path, csv_path]


def run_scenario(config: ScenarioConfig, out_dir: str, cache_dir: str | None = None) -> dict:
    """The full bundle: eigenvalues, snapshots, traces, hop and pattern reports."""
    os.makedirs(out_dir, exist_ok=True)
    problem = solve_problem(config, cache_dir)
    state = initial_state(problem)
    references = well_reference_states(problem)
    traces = compute_traces(problem, state, references)

    paths = [write_eigenvalues(problem, out_dir)]
    paths += write_eigenstates(problem, out_dir)
    paths += write_snapshots(problem, state, out_dir)
    paths += write_traces(problem, traces, out_dir)
    hops_path = os.path.join(out_dir, "hops.json")
    _write_json(hops_path, hop_report(problem, traces))
    paths.append(hops_path)
    paths += write_pattern_artifacts(problem, out_dir)
    paths.append(write_scenario_metadata(problem, out_dir))
    return {"problem": problem, "paths": paths}


def sweep(
    config: ScenarioConfig,
    heights: list,
    out_dir: str,
    cache_dir: str | None = None,
) -> dict:
    """One row per barrier height: energies plus the detected hop period.

    Rows keep the input order; a row whose eigensolve fails is marked failed
    and the sweep continues.  The hop period comes from detect_hops on the
    any-well trace (consecutive localization events).
    """
    if not heights:
        raise ConfigError("sweep needs at least one barrier height")
    if any(h < 0 for h in heights):
        raise ConfigError("barrier heights must be >= 0")
    os.makedirs(out_dir, exist_ok=True)
    k = config.k
    rows = []
    periods = []
    for height in heights:
        row_cfg = config.with_barrier_height(float(height))
        try:
            problem = solve_problem(row_cfg, cache_dir)
            state = initial_state(problem)
            references = well_reference_states(problem)
            traces = compute_traces(problem, state, references)
            detection = detect_hops(traces["any"], config.hop_threshold)
            t_rev = revival_time(config.geometry.total_length, config.units)
            period_fs = None if detection.period is None else detection.period * t_rev
            rows.append(
                {
                    "barrier_height_eV": float(height),
                    "energies_eV": [float(e) for e in problem.basis.energies],
                    "hop_period_fs": period_fs,
                    "status": "ok",
                }
            )
            periods.append(period_fs)
        except MultiwellError as exc:
            rows.append(
                {
                    "barrier_height_eV": float(height),
                    "energies_eV": None,
                    "hop_period_fs": None,
                    "status": f"failed: {exc}",
                }
            )
            periods.append(None)

    monotonic = None
    if len(heights) > 1 and all(p is not None for p in periods):
        monotonic = all(b > a for a, b in zip(periods, periods[1:]))

    fingerprint = config.fingerprint()
    csv_path = os.path.join(out_dir, "sweep.csv")
    header = (
        "barrier_height_eV,"
        + ",".join(f"E{i + 1}_eV" for i in range(k))
        + ",hop_period_fs,status"
    )

    def rows_iter():
        for row in rows:
            energies = row["energies_eV"]
            cells = [_fmt(row["barrier_height_eV"])]
            cells += [_fmt(e) for e in energies] if energies else [""] * k
            cells.append("" if row["hop_period_fs"] is None else _fmt(row["hop_period_fs"]))
            cells.append(row["status"].replace(",", ";").replace("\n", " "))
            yield cells

    _write_csv(csv_path, fingerprint, header, rows_iter())
    json_path = os.path.join(out_dir, "sweep.json")
    _write_json(
        json_path,
        {
            "fingerprint": fingerprint,
            "rows": rows,
            "monotonic_in_height": monotonic,
        },
    )
    return {"rows": rows, "monotonic_in_height": monotonic, "paths": [csv_path, json_path]}
