# src/impulsive_fronts/presets.py
"""Built-in experiment configs for the published scenarios.

fig2a/fig2b/fig2c are eigenvalue ladders over the interval length, the
disinfection strength H'(0) and the dry-season length. fig3-* compare the
identity impulse with H(u) = 4u/(10+u); fig4-* compare tau = 3 with tau = 4.7.
The dynamic presets run to t = 700 (the published horizon); grid and step
defaults come from `SimConfig`.
"""

from __future__ import annotations

from typing import Literal

from .config import ExperimentSpec, experiment_from_text
from .errors import ConfigError


PresetKind = Literal["ladder", "simulate"]

_LADDER_BASE = """\
d1 = 5
d2 = 40
delta1 = 0.6
delta2 = 0.9
a11 = 0.2
a12 = 0.8
a22 = 0.3
growth = beverton-holt
growth.a = 1
growth.m = 1.5
T = 10
mu1 = 1
mu2 = 1
s0 = 2
"""

_FIG3_BASE = """\
d1 = 0.5
d2 = 0.5
a11 = 0.8
a22 = 0.8
a12 = 1.67
delta1 = 1.5
delta2 = 1.5
growth = beverton-holt
growth.a = 1
growth.m = 1.7
mu1 = 6
mu2 = 8
tau = 6
T = 20
s0 = 2
init.u_amp = 0.4
init.v_amp = 0.1
sim.horizon = 700
"""

_FIG4_BASE = """\
d1 = 0.5
d2 = 0.5
a11 = 0.8
a22 = 0.8
a12 = 1.7
delta1 = 0.9
delta2 = 0.9
growth = beverton-holt
growth.a = 1
growth.m = 1.7
mu1 = 6
mu2 = 8
T = 10
s0 = 2
init.u_amp = 0.4
init.v_amp = 0.1
sim.horizon = 700
"""

PRESETS: dict[str, tuple[PresetKind, str]] = {
    "fig2a": (
        "ladder",
        "name = fig2a\n"
        + _LADDER_BASE
        + "tau = 5\nimpulse = linear\nimpulse.theta = 0.9\n"
        + "sweep.axis = length\nsweep.values = [10, 20, 30, 40, 50, 60]\n",
    ),
    "fig2b": (
        "ladder",
        "name = fig2b\n"
        + _LADDER_BASE
        + "tau = 5\nimpulse = linear\nimpulse.theta = 0.9\n"
        + "sweep.axis = impulse.theta\n"
        + "sweep.values = [0.01, 0.11, 0.21, 0.31, 0.41, 0.51, 0.61, 0.71, 0.81, "
        + "0.91]\n"
        + "sweep.l1 = -10\nsweep.l2 = 10\n",
    ),
    "fig2c": (
        "ladder",
        "name = fig2c\n"
        + _LADDER_BASE
        + "tau = 5\nimpulse = linear\nimpulse.theta = 0.9\n"
        + "sweep.axis = tau\nsweep.values = [2, 3, 4, 5, 6, 7, 8]\n"
        + "sweep.l1 = -10\nsweep.l2 = 10\n",
    ),
    "fig3-left": (
        "simulate",
        "name = fig3-left\n" + _FIG3_BASE + "impulse = identity\n",
    ),
    "fig3-right": (
        "simulate",
        "name = fig3-right\n"
        + _FIG3_BASE
        + "impulse = saturating\nimpulse.c = 4\nimpulse.d = 10\n",
    ),
    "fig4-left": ("simulate", "name = fig4-left\n" + _FIG4_BASE + "tau = 3\n"),
    "fig4-right": ("simulate", "name = fig4-right\n" + _FIG4_BASE + "tau = 4.7\n"),
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def preset_text(name: str) -> str:
    """Config text of a preset.

    Raises:
        ConfigError: Unknown preset name.
    """
    try:
        return PRESETS[name][1]
    except KeyError:
        known = ", ".join(preset_names())
        msg = f"unknown preset {name!r} (known: {known})"
        raise ConfigError(msg) from None


def preset_kind(name: str) -> PresetKind:
    preset_text(name)
    return PRESETS[name][0]


def load_preset(name: str) -> ExperimentSpec:
    return experiment_from_text(preset_text(name), path=f"<preset {name}>")
