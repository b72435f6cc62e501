# src/impulsive_fronts/export.py
"""CSV, report and plot-script emission.

Floats are written with 17 significant digits so reruns can be compared byte
for byte. Plot scripts are plain matplotlib programs reading the CSVs next to
them; they are generated, never executed here.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from .config import ExperimentSpec, write_config
from .constants import CSV_FLOAT_FORMAT
from .forward_sim import SimState, Trajectory
from .logs import get_app_logger
from .outcome import MuStarEstimate, Outcome
from .periodic_state import OdeOrbit, PeriodicOrbit


Cell = float | int | str | None


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return CSV_FLOAT_FORMAT.format(value)
    return value


def write_csv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[Cell]]
) -> Path:
    """Write an RFC-style CSV with LF line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    get_app_logger().debug("wrote %s", path)
    return path


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    get_app_logger().debug("wrote %s", path)
    return path


# --- Simulation outputs -------------------------------------------------------


def write_trajectory(traj: Trajectory, out_dir: Path) -> Path:
    rows = zip(
        traj.times.tolist(),
        traj.r.tolist(),
        traj.s.tolist(),
        traj.sup_u.tolist(),
        traj.sup_v.tolist(),
        traj.probe_u.tolist(),
        traj.probe_v.tolist(),
        strict=True,
    )
    return write_csv(
        out_dir / "trajectory.csv",
        ("t", "r", "s", "sup_u", "sup_v", "probe_u", "probe_v"),
        rows,
    )


def write_periods(traj: Trajectory, out_dir: Path) -> Path:
    rows = (
        (p.m, p.t, p.r, p.s, p.sup_u, p.sup_v, p.max_speed) for p in traj.periods
    )
    return write_csv(
        out_dir / "periods.csv",
        ("period", "t", "r", "s", "sup_u", "sup_v", "max_speed"),
        rows,
    )


def write_snapshots(traj: Trajectory, out_dir: Path) -> list[Path]:
    """One (x, u, v) CSV per snapshot plus an index file."""
    snap_dir = out_dir / "snapshots"
    paths: list[Path] = []
    index: list[tuple[Cell, ...]] = []
    for k, snap in enumerate(traj.snapshots):
        x = np.linspace(snap.r, snap.s, snap.u.size)
        name = f"snap_{k:04d}.csv"
        rows = zip(x.tolist(), snap.u.tolist(), snap.v.tolist(), strict=True)
        paths.append(write_csv(snap_dir / name, ("x", "u", "v"), rows))
        index.append((k, snap.t, snap.r, snap.s, name))
    write_csv(snap_dir / "index.csv", ("k", "t", "r", "s", "file"), index)
    return paths


def write_failure_state(state: SimState, path: Path) -> Path:
    rows = zip(state.x().tolist(), state.u.tolist(), state.v.tolist(), strict=True)
    return write_csv(path, ("x", "u", "v"), rows)


def write_outcome(outcome: Outcome, path: Path) -> Path:
    return write_text(path, "".join(f"{line}\n" for line in outcome.report_lines()))


def write_probe_history(estimate: MuStarEstimate, path: Path) -> Path:
    rows = (
        (k, mu, verdict.value, width)
        for k, (mu, verdict, width) in enumerate(estimate.history)
    )
    return write_csv(path, ("probe", "mu1", "verdict", "width"), rows)


def write_effective_config(spec: ExperimentSpec, out_dir: Path) -> Path:
    return write_text(out_dir / "effective.cfg", write_config(spec))


# --- Orbits -------------------------------------------------------------------


def write_orbit(orbit: PeriodicOrbit, out_dir: Path) -> list[Path]:
    """w and z as t-by-x matrices; the header row carries the x nodes."""
    header = ["t", *(format_cell(x) for x in orbit.x.tolist())]
    paths = []
    for name, values in (("orbit_w.csv", orbit.w), ("orbit_z.csv", orbit.z)):
        rows = (
            [t, *row]
            for t, row in zip(orbit.t.tolist(), values.tolist(), strict=True)
        )
        paths.append(write_csv(out_dir / name, header, rows))
    return paths


def write_ode_orbit(orbit: OdeOrbit, out_dir: Path) -> Path:
    rows = zip(orbit.t.tolist(), orbit.W.tolist(), orbit.Z.tolist(), strict=True)
    return write_csv(out_dir / "ode_orbit.csv", ("t", "W", "Z"), rows)


# --- Plot scripts -------------------------------------------------------------

_SIMULATION_PLOT = '''\
"""Plot the {name} run: fronts, sup norms, probe series and snapshots."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

HERE = Path(__file__).resolve().parent


def load(name):
    return np.genfromtxt(HERE / name, delimiter=",", names=True)


traj = load("trajectory.csv")
with (HERE / "snapshots" / "index.csv").open() as fh:
    index = list(csv.DictReader(fh))

fig, axes = plt.subplots(2, 2, figsize=(11, 8))
ax = axes[0, 0]
ax.plot(traj["t"], traj["s"], label="s(t)")
ax.plot(traj["t"], traj["r"], label="r(t)")
ax.set_xlabel("t")
ax.set_title("infection fronts")
ax.legend()

ax = axes[0, 1]
ax.semilogy(traj["t"], np.maximum(traj["sup_u"], 1e-300), label="sup u")
ax.semilogy(traj["t"], np.maximum(traj["sup_v"], 1e-300), label="sup v")
ax.set_xlabel("t")
ax.set_title("sup norms")
ax.legend()

ax = axes[1, 0]
ax.plot(traj["t"], traj["probe_u"], label="u(x0, t)")
ax.plot(traj["t"], traj["probe_v"], label="v(x0, t)")
ax.set_xlabel("t")
ax.set_title("probe")
ax.legend()

ax = axes[1, 1]
for row in index[:: max(1, len(index) // 8)]:
    snap = load(Path("snapshots") / row["file"])
    ax.plot(snap["x"], snap["u"], label="t=" + format(float(row["t"]), ".4g"))
ax.set_xlabel("x")
ax.set_title("u snapshots")
ax.legend(fontsize="small")

fig.suptitle("{name}")
fig.tight_layout()
fig.savefig(HERE / "{name}.png", dpi=150)
'''

_LADDER_PLOT = '''\
"""Plot lambda1 against {axis} for {name}."""

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

HERE = Path(__file__).resolve().parent
data = np.genfromtxt(HERE / "sweep.csv", delimiter=",", names=True, dtype=None,
                     encoding="utf-8")

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(data["value"], data["lambda1"], "o-")
ax.axhline(0.0, color="grey", lw=0.8)
ax.set_xlabel("{axis}")
ax.set_ylabel("lambda1")
ax.set_title("{name}")
fig.tight_layout()
fig.savefig(HERE / "{name}.png", dpi=150)
'''


def write_plot_script(out_dir: Path, name: str, *, axis: str | None = None) -> Path:
    """Generate `plot_<name>.py`; a sweep axis selects the ladder layout."""
    if axis is None:
        text = _SIMULATION_PLOT.format(name=name)
    else:
        text = _LADDER_PLOT.format(name=name, axis=axis)
    return write_text(out_dir / f"plot_{name}.py", text)
