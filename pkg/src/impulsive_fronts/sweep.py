# src/impulsive_fronts/sweep.py
"""Parameter sweeps over one config key.

Each row reports lambda1 on the sweep interval, nu1 and the classifier
verdict. Rows run on a bounded process pool and come back in input order, so
the CSV does not depend on the pool size. A failing row records its error and
the sweep continues.
"""

from __future__ import annotations

from dataclasses import dataclass
from multiprocessing import Pool

from .classifier import classify
from .config import ExperimentSpec, with_axis_value
from .eigen_analytic import lambda1_interval, nu1
from .errors import ImpulsiveFrontsError, ParameterError
from .export import Cell
from .logs import get_app_logger


SWEEP_HEADER: tuple[str, ...] = ("value", "lambda1", "nu1", "verdict", "error")


@dataclass(frozen=True)
class SweepRow:
    value: float
    lambda1: float | None = None
    nu1: float | None = None
    verdict: str | None = None
    error: str | None = None

    def cells(self) -> tuple[Cell, ...]:
        return (self.value, self.lambda1, self.nu1, self.verdict, self.error)


def sweep_row(spec: ExperimentSpec, value: float) -> SweepRow:
    """Evaluate one sweep value; library errors land in the `error` column."""
    if spec.sweep is None:
        msg = "experiment has no sweep axis"
        raise ParameterError(msg)
    try:
        row_spec = with_axis_value(spec, spec.sweep.axis, value)
        l1, l2 = row_spec.interval()
        lam = lambda1_interval(row_spec.params, l1, l2).lambda1
        limit = nu1(row_spec.params).lambda1
        verdict = classify(row_spec.params, row_spec.init).verdict.value
    except ImpulsiveFrontsError as exc:
        get_app_logger().warning("sweep value %r failed: %s", value, exc)
        return SweepRow(value=value, error=f"{type(exc).__name__}: {exc}")
    return SweepRow(value=value, lambda1=lam, nu1=limit, verdict=verdict)


def _row_star(args: tuple[ExperimentSpec, float]) -> SweepRow:
    return sweep_row(*args)


def run_sweep(spec: ExperimentSpec, parallel: int = 1) -> list[SweepRow]:
    """All sweep rows in input order.

    Args:
        spec: Experiment with a sweep axis.
        parallel: Worker processes; 1 runs inline.
    """
    if spec.sweep is None:
        msg = "experiment has no sweep axis"
        raise ParameterError(msg)
    if parallel < 1:
        msg = f"parallel must be >= 1 (got {parallel})"
        raise ParameterError(msg)
    values = list(spec.sweep.values)
    logger = get_app_logger()
    logger.info(
        "sweeping %s over %d values (%d workers)",
        spec.sweep.axis,
        len(values),
        parallel,
    )
    if parallel == 1 or len(values) <= 1:
        rows = [sweep_row(spec, v) for v in values]
    else:
        with Pool(min(parallel, len(values))) as pool:
            rows = pool.map(_row_star, [(spec, v) for v in values])
    failures = sum(row.error is not None for row in rows)
    logger.brief("sweep done: %d rows, %d failed", len(rows), failures)
    return rows
