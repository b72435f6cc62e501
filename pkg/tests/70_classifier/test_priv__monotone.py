# tests/70_classifier/test_priv__monotone.py
"""Tests for the monotonicity check on bisection probe histories."""

# we import `_` private for testing purposes only
# ruff: noqa: SLF001
# pyright: reportPrivateUsage=false

import impulsive_fronts.classifier as mod_classifier
import impulsive_fronts.outcome as mod_outcome


Verdict = mod_outcome.Verdict


def test_ordered_history_is_monotone() -> None:
    """Vanishing below spreading, in any probe order, is monotone."""
    # --- setup ---
    history = [
        (5.0, Verdict.SPREADING, 9.0),
        (1.0, Verdict.VANISHING, 4.0),
        (3.0, Verdict.VANISHING, 4.0),
        (4.0, Verdict.UNDECIDED, 6.0),
    ]

    # --- execute and verify ---
    assert mod_classifier._monotone(history)


def test_vanishing_above_spreading_is_not_monotone() -> None:
    """A vanishing probe above a spreading one breaks monotonicity."""
    # --- setup ---
    history = [
        (1.0, Verdict.VANISHING, 4.0),
        (2.0, Verdict.SPREADING, 9.0),
        (3.0, Verdict.VANISHING, 4.0),
    ]

    # --- execute and verify ---
    assert not mod_classifier._monotone(history)
