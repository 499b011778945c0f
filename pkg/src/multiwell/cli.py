"""Command-line interface.

Subcommands: solve, design, evolve, correlate, sweep, inverse.  Every
subcommand reads one JSON scenario config and writes its artifacts to the
output directory.  Exit codes: 0 success, 2 configuration error, 3
eigensolver convergence failure, 4 bracket/design failure.
"""

import argparse
import os
import sys

from .cache import ENV_CACHE_DIR
from .config import load_config
from .design import InverseDesignResult, inverse_barrier_height
from .errors import ConfigError, ConvergenceError, DesignError, MultiwellError
from .scenario import (
    _write_json,
    compute_traces,
    hop_report,
    initial_state,
    run_scenario,
    solve_problem,
    sweep,
    well_reference_states,
    write_eigenstates,
    write_eigenvalues,
    write_pattern_artifacts,
    write_scenario_metadata,
    write_snapshots,
    write_traces,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_DESIGN = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="scenario config JSON")
    parser.add_argument("--out", default="out", help="output directory (default: ./out)")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--cache", default=None, help="eigen-solution cache directory")
    parser.add_argument("--no-cache", action="store_true", help="disable the eigen cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiwell",
        description="Bound states, spectral dynamics and localization in 1-D multi-well potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("solve", "eigenvalues only"),
        ("design", "localization sign patterns and probabilities"),
        ("evolve", "state snapshots at the configured tau values"),
        ("correlate", "correlation traces and the hop report"),
        ("run", "the full artifact bundle (solve + design + evolve + correlate)"),
    ):
        p = sub.add_parser(name, help=text)
        _add_common(p)

    p = sub.add_parser("sweep", help="repeat the scenario over barrier heights")
    _add_common(p)
    p.add_argument(
        "--values",
        required=True,
        help="comma-separated barrier heights in eV, e.g. 0.4,0.5,0.6",
    )

    p = sub.add_parser("inverse", help="find the barrier height for a target hop period")
    _add_common(p)
    p.add_argument("--target-period-fs", type=float, required=True)
    p.add_argument(
        "--bracket", required=True, help="height bracket in eV, e.g. 0.4,0.7"
    )
    return parser


def _cache_dir(args) -> str | None:
    if args.no_cache:
        return None
    if args.cache:
        return args.cache
    return os.environ.get(ENV_CACHE_DIR) or None


def _load(args):
    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    os.makedirs(args.out, exist_ok=True)
    return config


def _run(args) -> int:
    command = args.command
    config = _load(args)
    cache_dir = _cache_dir(args)

    if command == "sweep":
        try:
            heights = [float(v) for v in args.values.split(",") if v.strip() != ""]
        except ValueError as exc:
            raise ConfigError(f"--values must be comma-separated numbers: {exc}") from exc
        sweep(config, heights, args.out, cache_dir)
        return EXIT_OK

    if command == "inverse":
        try:
            lo, hi = (float(v) for v in args.bracket.split(","))
        except ValueError as exc:
            raise ConfigError("--bracket must be 'lo,hi' in eV") from exc
        result: InverseDesignResult = inverse_barrier_height(
            geometry=config.geometry,
            target_period=args.target_period_fs,
            bracket=(lo, hi),
            grid_points=config.grid_points,
            units=config.units,
            seed=config.seed,
        )
        _write_json(
            os.path.join(args.out, "inverse.json"),
            {
                "fingerprint": config.fingerprint(),
                "barrier_height_eV": result.barrier_height,
                "achieved_period_fs": result.achieved_period,
                "target_period_fs": result.target_period,
                "eigensolves": result.evaluations,
                "bracket_eV": [lo, hi],
            },
        )
        return EXIT_OK

    if command == "solve":
        problem = solve_problem(config, cache_dir)
        write_eigenvalues(problem, args.out)
        write_eigenstates(problem, args.out)
        write_scenario_metadata(problem, args.out)
        return EXIT_OK

    if command == "design":
        problem = solve_problem(config, cache_dir)
        write_pattern_artifacts(problem, args.out)
        write_scenario_metadata(problem, args.out)
        return EXIT_OK

    if command == "evolve":
        problem = solve_problem(config, cache_dir)
        state = initial_state(problem)
        write_snapshots(problem, state, args.out)
        write_scenario_metadata(problem, args.out)
        return EXIT_OK

    if command == "correlate":
        problem = solve_problem(config, cache_dir)
        state = initial_state(problem)
        references = well_reference_states(problem)
        traces = compute_traces(problem, state, references)
        write_traces(problem, traces, args.out)
        _write_json(os.path.join(args.out, "hops.json"), hop_report(problem, traces))
        write_scenario_metadata(problem, args.out)
        return EXIT_OK

    run_scenario(config, args.out, cache_dir)
    return EXIT_OK


def exit_code_for(exc: MultiwellError) -> int:
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(exc, DesignError):
        return EXIT_DESIGN
    return EXIT_CONFIG


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except MultiwellError as exc:
        print(f"multiwell {args.command}: error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
