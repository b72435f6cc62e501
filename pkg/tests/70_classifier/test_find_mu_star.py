# tests/70_classifier/test_find_mu_star.py
"""Bisection for the expansion-capacity threshold with a stand-in probe."""

from collections.abc import Callable
from typing import Any, ClassVar

import pytest

import impulsive_fronts.classifier as mod_classifier
import impulsive_fronts.errors as mod_errors
import impulsive_fronts.forward_sim as mod_forward
import impulsive_fronts.outcome as mod_outcome
from tests.utils import cosine_init, disinfection_params


Verdict = mod_outcome.Verdict
SIM = mod_forward.SimConfig(n=32)


def threshold_probe(mu_star: float) -> mod_classifier.Probe:
    def probe(mu1: float) -> tuple[mod_outcome.Verdict, float]:
        if mu1 < mu_star:
            return Verdict.VANISHING, 4.0
        return Verdict.SPREADING, 100.0

    return probe


def test_bracket_shrinks_around_the_threshold() -> None:
    """The final bracket holds mu* and is no wider than the resolution."""
    # --- execute ---
    est = mod_classifier.find_mu_star(
        disinfection_params(),
        cosine_init(),
        1.0,
        (1.0, 5.0),
        SIM,
        resolution=0.01,
        probe=threshold_probe(3.3),
    )

    # --- verify ---
    assert est.lo < 3.3 <= est.hi
    assert est.width <= 0.01
    assert len(est.history) == 2 + 9
    assert est.monotone
    assert not est.paused
    assert est.history[0][:2] == (1.0, Verdict.VANISHING)
    assert est.history[1][:2] == (5.0, Verdict.SPREADING)


def test_undecided_probe_pauses_the_bisection() -> None:
    """An undecided midpoint returns the last decided bracket, paused."""
    # --- setup ---
    decided = threshold_probe(3.3)

    def probe(mu1: float) -> tuple[mod_outcome.Verdict, float]:
        if 2.5 < mu1 < 3.5:
            return Verdict.UNDECIDED, 10.0
        return decided(mu1)

    # --- execute ---
    est = mod_classifier.find_mu_star(
        disinfection_params(), cosine_init(), 1.0, (1.0, 5.0), SIM, probe=probe
    )

    # --- verify ---
    assert est.paused
    assert (est.lo, est.hi) == (1.0, 5.0)
    assert [mu for mu, _, _ in est.history] == [1.0, 5.0, 3.0]


@pytest.mark.parametrize("mu_star", [0.5, 10.0])
def test_bracket_must_straddle_the_threshold(mu_star: float) -> None:
    """Equal verdicts at both ends raise BracketError."""
    # --- execute ---
    with pytest.raises(mod_errors.BracketError) as info:
        mod_classifier.find_mu_star(
            disinfection_params(),
            cosine_init(),
            1.0,
            (1.0, 5.0),
            SIM,
            probe=threshold_probe(mu_star),
        )

    # --- verify ---
    assert info.value.diagnostics["mu_lo"] == 1.0
    assert info.value.diagnostics["verdict_lo"] == info.value.diagnostics["verdict_hi"]


def test_reversed_verdicts_are_rejected() -> None:
    """Spreading at mu_lo with vanishing at mu_hi is not a bracket."""
    # --- setup ---
    def probe(mu1: float) -> tuple[mod_outcome.Verdict, float]:
        return (Verdict.SPREADING if mu1 < 3.0 else Verdict.VANISHING), 1.0

    # --- execute and verify ---
    with pytest.raises(mod_errors.BracketError):
        mod_classifier.find_mu_star(
            disinfection_params(), cosine_init(), 1.0, (1.0, 5.0), SIM, probe=probe
        )


@pytest.mark.parametrize(
    ("rho", "bracket"),
    [(1.0, (0.0, 1.0)), (1.0, (2.0, 1.0)), (0.0, (1.0, 2.0))],
)
def test_invalid_bracket_or_ratio(rho: float, bracket: tuple[float, float]) -> None:
    """Non-positive or inverted brackets and rho <= 0 are parameter errors."""
    # --- execute and verify ---
    with pytest.raises(mod_errors.ParameterError):
        mod_classifier.find_mu_star(
            disinfection_params(),
            cosine_init(),
            rho,
            bracket,
            SIM,
            probe=threshold_probe(3.3),
        )


def test_estimate_in_outcome_report() -> None:
    """A mu* estimate adds its bracket lines to the report."""
    # --- setup ---
    est = mod_classifier.find_mu_star(
        disinfection_params(),
        cosine_init(),
        2.0,
        (1.0, 5.0),
        SIM,
        resolution=1.0,
        probe=threshold_probe(3.3),
    )
    outcome = mod_outcome.Outcome(Verdict.THRESHOLD, {}, (), est)

    # --- execute ---
    lines = outcome.report_lines()

    # --- verify ---
    assert "mu_star.lo = 3.0" in lines
    assert "mu_star.hi = 4.0" in lines
    assert "mu_star.rho = 2.0" in lines
    assert "mu_star.probes = 4" in lines
    assert "mu_star.paused = false" in lines


class InlinePool:
    """Stands in for multiprocessing.Pool and maps in the calling process."""

    created: ClassVar[list["InlinePool"]] = []

    def __init__(self, processes: int) -> None:
        self.processes = processes
        self.closed = False
        self.batches: list[int] = []
        InlinePool.created.append(self)

    def map(self, fn: Callable[[Any], Any], items: list[Any]) -> list[Any]:
        self.batches.append(len(items))
        return [fn(item) for item in items]

    def close(self) -> None:
        self.closed = True

    def join(self) -> None:
        assert self.closed


def test_parallel_bisection_probes_both_children(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """With parallel=True each step sends the midpoint and both children."""
    # --- setup ---
    decided = threshold_probe(3.3)

    def fake_probe_mu(
        _params: object, _init: object, _sim: object, _rho: float, mu1: float
    ) -> tuple[mod_outcome.Verdict, float]:
        return decided(mu1)

    InlinePool.created.clear()
    monkeypatch.setattr(mod_classifier, "Pool", InlinePool)
    monkeypatch.setattr(mod_classifier, "probe_mu", fake_probe_mu)

    # --- execute ---
    est = mod_classifier.find_mu_star(
        disinfection_params(),
        cosine_init(),
        1.0,
        (1.0, 5.0),
        SIM,
        resolution=0.5,
        parallel=True,
    )

    # --- verify ---
    assert est.lo < 3.3 <= est.hi
    assert est.width <= 0.5
    assert not est.paused
    (pool,) = InlinePool.created
    assert pool.processes == 3
    assert pool.closed
    assert pool.batches[0] == 2
    assert pool.batches[1] == 3
    assert est.monotone
