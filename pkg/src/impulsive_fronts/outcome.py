# src/impulsive_fronts/outcome.py
"""Spreading/vanishing verdicts shared by forward-sim and the classifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    SPREADING = "Spreading"
    VANISHING = "Vanishing"
    THRESHOLD = "ThresholdRegime"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class MuStarEstimate:
    """Bisection bracket for the expansion-capacity threshold mu*.

    `history` holds (mu1, verdict, final width s - r) in probe order.
    """

    lo: float
    hi: float
    rho: float
    history: tuple[tuple[float, Verdict, float], ...] = ()
    monotone: bool = True
    paused: bool = False

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class Outcome:
    verdict: Verdict
    evidence: dict[str, float | None] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    mu_star: MuStarEstimate | None = None

    def report_lines(self) -> list[str]:
        """Flat `key = value` report, evidence keys sorted."""
        lines = [f"verdict = {self.verdict.value}"]
        for key in sorted(self.evidence):
            value = self.evidence[key]
            text = "none" if value is None else repr(float(value))
            lines.append(f"evidence.{key} = {text}")
        if self.mu_star is not None:
            est = self.mu_star
            lines.extend(
                [
                    f"mu_star.lo = {est.lo!r}",
                    f"mu_star.hi = {est.hi!r}",
                    f"mu_star.rho = {est.rho!r}",
                    f"mu_star.probes = {len(est.history)}",
                    f"mu_star.monotone = {str(est.monotone).lower()}",
                    f"mu_star.paused = {str(est.paused).lower()}",
                ]
            )
        lines.extend(f"note.{i} = {note}" for i, note in enumerate(self.notes, 1))
        return lines
