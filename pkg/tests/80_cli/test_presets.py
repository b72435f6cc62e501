# tests/80_cli/test_presets.py
"""Built-in scenarios load into valid experiments."""

import pytest

import impulsive_fronts.errors as mod_errors
import impulsive_fronts.presets as mod_presets


@pytest.mark.parametrize("name", mod_presets.preset_names())
def test_every_preset_builds(name: str) -> None:
    """Each preset parses and carries its own name."""
    # --- execute ---
    spec = mod_presets.load_preset(name)

    # --- verify ---
    assert spec.name == name
    if mod_presets.preset_kind(name) == "ladder":
        assert spec.sweep is not None
        assert spec.sweep.values
    else:
        assert spec.sweep is None
        assert spec.sim.horizon == 700.0


def test_fig4_presets_differ_only_in_tau() -> None:
    """The two dry-season lengths share every other coefficient."""
    # --- execute ---
    left = mod_presets.load_preset("fig4-left").params
    right = mod_presets.load_preset("fig4-right").params

    # --- verify ---
    assert (left.tau, right.tau) == (3.0, 4.7)
    assert left.with_overrides(tau=4.7) == right


def test_unknown_preset() -> None:
    """Unknown names list the known ones."""
    # --- execute and verify ---
    with pytest.raises(mod_errors.ConfigError, match="known: fig2a"):
        mod_presets.preset_text("nope")
