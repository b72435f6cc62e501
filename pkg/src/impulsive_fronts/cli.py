# src/impulsive_fronts/cli.py
"""Command-line driver.

    impulsive-fronts [--log-level L] [--out DIR] <command> ...

Commands: eigen, simulate, classify, sweep, orbit, presets. Exit status is 0 on
success, 1 for usage or config errors and 2 when a solver fails.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from dataclasses import replace
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import NoReturn

import numpy as np

from .classifier import classify, find_mu_star
from .config import ExperimentSpec, read_experiment
from .constants import (
    EXIT_OK,
    EXIT_SOLVER,
    EXIT_USAGE,
    LOG_LEVEL_CHOICES,
    PROGRAM_DISPLAY,
)
from .eigen_analytic import lambda1_interval, nu1
from .eigen_discrete import build_monodromy, power_iterate
from .errors import ConfigError, ParameterError, SolverError
from .export import (
    write_csv,
    write_effective_config,
    write_failure_state,
    write_ode_orbit,
    write_orbit,
    write_outcome,
    write_periods,
    write_plot_script,
    write_probe_history,
    write_snapshots,
    write_trajectory,
)
from .forward_sim import SimState, detect_outcome, run
from .logs import get_app_logger
from .outcome import Verdict
from .periodic_state import monotone_iterate, periodic_ode_orbit
from .presets import load_preset, preset_kind, preset_names, preset_text
from .sweep import SWEEP_HEADER, run_sweep


DEFAULT_MU_BRACKET = (0.01, 100.0)


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit status of this tool."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def package_version() -> str:
    try:
        return version(PROGRAM_DISPLAY)
    except PackageNotFoundError:
        return "0.0.0+local"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=PROGRAM_DISPLAY,
        description="Two-season impulsive free-boundary epidemic experiments.",
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVEL_CHOICES,
        type=str.lower,
        help="Verbosity (default from env or 'info').",
    )
    parser.add_argument("--out", help="Output directory (overrides config/env).")
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {package_version()}"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    eigen = sub.add_parser("eigen", help="Principal eigenvalue on an interval.")
    eigen.add_argument("config")
    where = eigen.add_mutually_exclusive_group()
    where.add_argument("--l", type=float, help="Interval length; uses (-l/2, l/2).")
    where.add_argument("--limit", action="store_true", help="Print nu1 instead.")
    eigen.add_argument("--l1", type=float)
    eigen.add_argument("--l2", type=float)
    eigen.add_argument(
        "--discrete", action="store_true", help="Also run the monodromy oracle."
    )

    simulate = sub.add_parser("simulate", help="Forward run with moving fronts.")
    simulate.add_argument("config")
    simulate.add_argument("--horizon", type=float)
    simulate.add_argument("--snap-every", type=float)

    classify_p = sub.add_parser("classify", help="Spreading/vanishing verdict.")
    classify_p.add_argument("config")
    classify_p.add_argument("--rho", type=float, help="mu2/mu1 for the mu* search.")
    classify_p.add_argument("--find-mu-star", action="store_true")
    classify_p.add_argument(
        "--parallel", action="store_true", help="Probe bisection children together."
    )

    sweep = sub.add_parser("sweep", help="One row per sweep value.")
    sweep.add_argument("config")
    sweep.add_argument("--parallel", type=int, default=1)

    orbit = sub.add_parser("orbit", help="Periodic steady state.")
    orbit.add_argument("config")
    orbit.add_argument("--ode", action="store_true", help="Homogeneous ODE orbit.")
    orbit.add_argument("--l1", type=float)
    orbit.add_argument("--l2", type=float)
    orbit.add_argument("--seed", choices=("upper", "lower"), default="upper")
    orbit.add_argument("--force", action="store_true")

    presets = sub.add_parser("presets", help="Built-in scenarios.")
    presets.add_argument("action", choices=("list", "show", "run"))
    presets.add_argument("name", nargs="?")
    return parser


# --- Helpers ------------------------------------------------------------------


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)  # noqa: T201


def _out_dir(args: argparse.Namespace, spec: ExperimentSpec) -> Path:
    return Path(args.out) if args.out else Path(spec.output_dir)


def _interval(
    args: argparse.Namespace, spec: ExperimentSpec
) -> tuple[float, float]:
    if getattr(args, "l", None) is not None:
        return -args.l / 2.0, args.l / 2.0
    l1, l2 = spec.interval()
    if args.l1 is not None:
        l1 = args.l1
    if args.l2 is not None:
        l2 = args.l2
    return l1, l2


def _ladder(spec: ExperimentSpec, out: Path, parallel: int) -> list[str]:
    rows = run_sweep(spec, parallel)
    path = write_csv(out / "sweep.csv", SWEEP_HEADER, (row.cells() for row in rows))
    axis = spec.sweep.axis if spec.sweep is not None else "value"
    write_plot_script(out, spec.name, axis=axis)
    return [f"sweep.rows = {len(rows)}", f"sweep.csv = {path}"]


# --- Commands -----------------------------------------------------------------


def cmd_eigen(args: argparse.Namespace, spec: ExperimentSpec) -> list[str]:
    logger = get_app_logger()
    params = spec.params
    explicit = args.l is not None or args.l1 is not None or args.l2 is not None
    if spec.sweep is not None and not explicit and not args.limit:
        return _ladder(spec, _out_dir(args, spec), 1)
    if args.limit:
        limit = nu1(params)
        logger.log_eigen("nu1", limit.lambda1)
        return [f"nu1 = {limit.lambda1!r}", f"case = {limit.case_id.value}"]
    l1, l2 = _interval(args, spec)
    sol = lambda1_interval(params, l1, l2)
    logger.log_eigen(f"lambda1({l1:g}, {l2:g})", sol.lambda1)
    lines = [
        f"l1 = {l1!r}",
        f"l2 = {l2!r}",
        f"lambda1 = {sol.lambda1!r}",
        f"case = {sol.case_id.value}",
        f"k = {sol.k!r}",
    ]
    if args.discrete:
        op = build_monodromy(params, l1, l2, spec.eigen.n, spec.eigen.dt)
        result = power_iterate(op, spec.eigen.tol, spec.eigen.max_iter)
        lines += [
            f"lambda1_discrete = {result.lambda1!r}",
            f"gap = {abs(result.lambda1 - sol.lambda1)!r}",
            f"iterations = {result.iterations}",
        ]
    return lines


def cmd_simulate(args: argparse.Namespace, spec: ExperimentSpec) -> list[str]:
    sim = spec.sim
    if args.horizon is not None:
        sim = replace(sim, horizon=args.horizon)
    if args.snap_every is not None:
        sim = replace(sim, snap_every=args.snap_every)
    spec = replace(spec, sim=sim)
    out = _out_dir(args, spec)
    write_effective_config(spec, out)
    try:
        traj = run(spec.params, spec.init, sim)
    except SolverError as exc:
        if isinstance(exc.state, SimState):
            dump = write_failure_state(exc.state, out / "failure_state.csv")
            get_app_logger().error("last accepted state written to %s", dump)
        raise
    outcome = traj.early_outcome or detect_outcome(traj, sim)
    write_trajectory(traj, out)
    write_periods(traj, out)
    write_snapshots(traj, out)
    write_outcome(outcome, out / "outcome.txt")
    write_plot_script(out, spec.name)
    get_app_logger().brief("%s: %s", spec.name, outcome.verdict.value)
    return [*outcome.report_lines(), f"output = {out}"]


def cmd_classify(args: argparse.Namespace, spec: ExperimentSpec) -> list[str]:
    outcome = classify(spec.params, spec.init)
    if args.find_mu_star and outcome.verdict is Verdict.THRESHOLD:
        p = spec.params
        cfg = spec.classify
        rho = args.rho or cfg.rho or (p.mu2 / p.mu1 if p.mu1 > 0 else 1.0)
        bracket = (
            cfg.mu_lo if cfg.mu_lo is not None else DEFAULT_MU_BRACKET[0],
            cfg.mu_hi if cfg.mu_hi is not None else DEFAULT_MU_BRACKET[1],
        )
        estimate = find_mu_star(
            p,
            spec.init,
            rho,
            bracket,
            spec.sim,
            resolution=cfg.resolution,
            parallel=args.parallel,
        )
        outcome = replace(outcome, mu_star=estimate)
        write_probe_history(estimate, _out_dir(args, spec) / "mu_star_probes.csv")
    write_outcome(outcome, _out_dir(args, spec) / "classify.txt")
    return outcome.report_lines()


def cmd_sweep(args: argparse.Namespace, spec: ExperimentSpec) -> list[str]:
    if spec.sweep is None:
        msg = "config has no sweep.axis / sweep.values"
        raise ConfigError(msg, path=args.config)
    return _ladder(spec, _out_dir(args, spec), args.parallel)


def cmd_orbit(args: argparse.Namespace, spec: ExperimentSpec) -> list[str]:
    out = _out_dir(args, spec)
    if args.ode:
        ode = periodic_ode_orbit(
            spec.params,
            spec.orbit.tol,
            steps=spec.orbit.steps,
            max_periods=spec.orbit.max_sweeps,
            force=args.force,
            init=spec.init,
        )
        path = write_ode_orbit(ode, out)
        sup_w, sup_z = ode.sup()
        return [
            f"zero = {str(ode.is_zero).lower()}",
            f"periods = {ode.periods}",
            f"sup_W = {sup_w!r}",
            f"sup_Z = {sup_z!r}",
            f"csv = {path}",
        ]
    l1, l2 = _interval(args, spec)
    orbit = monotone_iterate(
        spec.params,
        l1,
        l2,
        spec.orbit,
        seed=args.seed,
        force=args.force,
        init=spec.init,
    )
    paths = write_orbit(orbit, out)
    sup_w, sup_z = orbit.sup()
    return [
        f"zero = {str(orbit.is_zero).lower()}",
        f"sweeps = {orbit.sweeps}",
        f"shortcut = {str(orbit.shortcut).lower()}",
        f"sup_w = {sup_w!r}",
        f"sup_z = {sup_z!r}",
        *(f"csv = {p}" for p in paths),
    ]


def cmd_presets(args: argparse.Namespace) -> list[str]:
    if args.action == "list":
        return preset_names()
    if not args.name:
        msg = f"presets {args.action} needs a preset name"
        raise ConfigError(msg)
    if args.action == "show":
        return preset_text(args.name).splitlines()
    spec = load_preset(args.name)
    if preset_kind(args.name) == "ladder":
        return _ladder(spec, _out_dir(args, spec), 1)
    run_args = argparse.Namespace(**vars(args), horizon=None, snap_every=None)
    return cmd_simulate(run_args, spec)


COMMANDS: dict[str, Callable[[argparse.Namespace, ExperimentSpec], list[str]]] = {
    "eigen": cmd_eigen,
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
    "orbit": cmd_orbit,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if isinstance(exc.code, int) else EXIT_USAGE

    logger = get_app_logger()
    logger.setLevel(logger.determineLogLevel(args=args))

    try:
        if args.command == "presets":
            lines = cmd_presets(args)
        else:
            spec = read_experiment(args.config)
            lines = COMMANDS[args.command](args, spec)
    except (ConfigError, ParameterError) as exc:
        logger.errorIfNotDebug("%s", exc)
        return EXIT_USAGE
    except SolverError as exc:
        logger.errorIfNotDebug("solver failed: %s", exc)
        return EXIT_SOLVER
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        logger.errorIfNotDebug("solver failed: %s: %s", type(exc).__name__, exc)
        return EXIT_SOLVER
    except OSError as exc:
        logger.errorIfNotDebug("I/O error: %s", exc)
        return EXIT_USAGE
    _emit(lines)
    return EXIT_OK
