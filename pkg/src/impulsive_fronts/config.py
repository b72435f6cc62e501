# src/impulsive_fronts/config.py
"""Flat `key = value` experiment configuration.

Lines are `key = value`; `#` starts a comment. Values are floats, booleans
(`true`/`false`), bare or quoted strings, or inline lists `[a, b, c]`. Unknown
and duplicate keys are errors carrying the line number.

`write_config` emits every effective key sorted with floats in `repr` form, so
reading the output back yields an identical `ExperimentSpec`.
"""

from __future__ import annotations

import math
import os
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path

from .constants import (
    DEFAULT_EIGEN_MAX_ITER,
    DEFAULT_EIGEN_N,
    DEFAULT_EIGEN_TOL,
    DEFAULT_OUTPUT_DIR,
    OUTPUT_DIR_ENV_VAR,
)
from .errors import ConfigError, ParameterError
from .forward_sim import SimConfig
from .model import GrowthFunction, ImpulseFunction, InitialData, ModelParams
from .periodic_state import OrbitConfig


Scalar = float | bool | str
ConfigValue = Scalar | list[Scalar]

MODEL_KEYS: tuple[str, ...] = (
    "d1",
    "d2",
    "a11",
    "a12",
    "a22",
    "delta1",
    "delta2",
    "mu1",
    "mu2",
    "tau",
    "T",
    "s0",
)

# key -> value kind
KEY_KINDS: dict[str, str] = {
    **dict.fromkeys(MODEL_KEYS, "float"),
    "name": "str",
    "growth": "str",
    "growth.m": "float",
    "growth.a": "float",
    "impulse": "str",
    "impulse.c": "float",
    "impulse.d": "float",
    "impulse.theta": "float",
    "init.u_amp": "float",
    "init.v_amp": "float",
    "sim.N": "int",
    "sim.dt": "float",
    "sim.dt_min": "float",
    "sim.horizon": "float",
    "sim.vanish_eps": "float",
    "sim.spread_width": "float",
    "sim.snap_every": "float",
    "sim.impulse_at_start": "bool",
    "sim.probe_x": "float",
    "sim.theta": "float",
    "eigen.N": "int",
    "eigen.dt": "float",
    "eigen.tol": "float",
    "eigen.max_iter": "int",
    "orbit.N": "int",
    "orbit.steps": "int",
    "orbit.tol": "float",
    "orbit.max_sweeps": "int",
    "sweep.axis": "str",
    "sweep.values": "list",
    "sweep.l1": "float",
    "sweep.l2": "float",
    "classify.rho": "float",
    "classify.mu_lo": "float",
    "classify.mu_hi": "float",
    "classify.resolution": "float",
    "output.dir": "str",
}

LENGTH_AXIS = "length"
"""Sweep axis for the interval length: each row uses (-v/2, v/2)."""

SWEEP_AXES: frozenset[str] = frozenset(
    {
        *MODEL_KEYS,
        "growth.m",
        "growth.a",
        "impulse.c",
        "impulse.d",
        "impulse.theta",
        LENGTH_AXIS,
    }
)


@dataclass(frozen=True)
class RawConfig:
    """Parsed values plus the line each key came from."""

    values: dict[str, ConfigValue]
    lines: dict[str, int] = field(default_factory=dict)
    path: str | None = None

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(message, path=self.path, line=self.lines.get(key))


@dataclass(frozen=True)
class EigenConfig:
    n: int = DEFAULT_EIGEN_N
    dt: float | None = None
    tol: float = DEFAULT_EIGEN_TOL
    max_iter: int = DEFAULT_EIGEN_MAX_ITER


@dataclass(frozen=True)
class SweepAxis:
    axis: str
    values: tuple[float, ...]
    l1: float | None = None
    l2: float | None = None


@dataclass(frozen=True)
class ClassifyConfig:
    rho: float | None = None
    mu_lo: float | None = None
    mu_hi: float | None = None
    resolution: float | None = None


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything one run or sweep needs."""

    name: str
    params: ModelParams
    init: InitialData
    sim: SimConfig = field(default_factory=SimConfig)
    eigen: EigenConfig = field(default_factory=EigenConfig)
    orbit: OrbitConfig = field(default_factory=OrbitConfig)
    sweep: SweepAxis | None = None
    classify: ClassifyConfig = field(default_factory=ClassifyConfig)
    output_dir: str = DEFAULT_OUTPUT_DIR
    source: RawConfig | None = field(default=None, compare=False, repr=False)

    def interval(self) -> tuple[float, float]:
        """(l1, l2) for eigen/sweep reports; defaults to (-s0, s0)."""
        s0 = self.params.s0
        if self.sweep is not None:
            l1 = self.sweep.l1 if self.sweep.l1 is not None else -s0
            l2 = self.sweep.l2 if self.sweep.l2 is not None else s0
            return l1, l2
        return -s0, s0


# --- Parsing ------------------------------------------------------------------


def _parse_scalar(token: str) -> Scalar:
    text = token.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":  # noqa: PLR2004
        return text[1:-1]
    lowered = text.lower()
    if lowered in {"true", "false"}:
        return lowered == "true"
    try:
        return float(text)
    except ValueError:
        return text


def parse_value(token: str) -> ConfigValue:
    text = token.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            msg = f"unterminated list: {text!r}"
            raise ValueError(msg)
        body = text[1:-1].strip()
        if not body:
            return []
        return [_parse_scalar(part) for part in body.split(",")]
    return _parse_scalar(text)


def parse_config_text(text: str, path: str | None = None) -> RawConfig:
    """Parse config text; errors name the offending line.

    Raises:
        ConfigError: Malformed line, unknown key, duplicate key or bad value.
    """
    values: dict[str, ConfigValue] = {}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            msg = f"expected 'key = value', got {line!r}"
            raise ConfigError(msg, path=path, line=number)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in KEY_KINDS:
            msg = f"unknown key {key!r}"
            raise ConfigError(msg, path=path, line=number)
        if key in values:
            msg = f"duplicate key {key!r} (first set on line {lines[key]})"
            raise ConfigError(msg, path=path, line=number)
        try:
            parsed = parse_value(value)
        except ValueError as exc:
            raise ConfigError(str(exc), path=path, line=number) from exc
        values[key] = _check_kind(key, parsed, path=path, line=number)
        lines[key] = number
    return RawConfig(values=values, lines=lines, path=path)


def _check_kind(
    key: str, value: ConfigValue, *, path: str | None, line: int
) -> ConfigValue:
    kind = KEY_KINDS[key]
    if kind == "list":
        if not isinstance(value, list):
            value = [value]
        if not all(isinstance(v, float) and math.isfinite(v) for v in value):
            msg = f"{key} must be a list of finite numbers"
            raise ConfigError(msg, path=path, line=line)
        return value
    if kind == "str":
        if isinstance(value, list):
            msg = f"{key} must be a string"
            raise ConfigError(msg, path=path, line=line)
        return str(value) if not isinstance(value, bool) else str(value).lower()
    if kind == "bool":
        if not isinstance(value, bool):
            msg = f"{key} must be true or false"
            raise ConfigError(msg, path=path, line=line)
        return value
    if isinstance(value, bool) or not isinstance(value, float):
        msg = f"{key} must be a number (got {value!r})"
        raise ConfigError(msg, path=path, line=line)
    if not math.isfinite(value):
        msg = f"{key} must be finite"
        raise ConfigError(msg, path=path, line=line)
    if kind == "int" and not value.is_integer():
        msg = f"{key} must be an integer (got {value!r})"
        raise ConfigError(msg, path=path, line=line)
    return value


def load_config(path: str | Path) -> RawConfig:
    """Read and parse a config file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read config: {exc.strerror or exc}"
        raise ConfigError(msg, path=str(p)) from exc
    return parse_config_text(text, path=str(p))


# --- Building -----------------------------------------------------------------


def _float(raw: RawConfig, key: str, default: float | None = None) -> float:
    value = raw.values.get(key)
    if value is None:
        if default is None:
            msg = f"missing required key {key!r}"
            raise raw.error(key, msg)
        return default
    return float(value)  # type: ignore[arg-type]


def _opt_float(raw: RawConfig, key: str) -> float | None:
    value = raw.values.get(key)
    return None if value is None else float(value)  # type: ignore[arg-type]


def _int(raw: RawConfig, key: str, default: int) -> int:
    value = raw.values.get(key)
    return default if value is None else int(value)  # type: ignore[arg-type]


def build_growth(raw: RawConfig) -> GrowthFunction:
    kind = str(raw.values.get("growth", "beverton-holt"))
    if kind != "beverton-holt":
        msg = f"unsupported growth {kind!r} (expected 'beverton-holt')"
        raise raw.error("growth", msg)
    return GrowthFunction.beverton_holt(
        _float(raw, "growth.m"), _float(raw, "growth.a")
    )


def build_impulse(raw: RawConfig) -> ImpulseFunction:
    kind = str(raw.values.get("impulse", "identity"))
    if kind == "identity":
        return ImpulseFunction.identity()
    if kind == "saturating":
        return ImpulseFunction.saturating(
            _float(raw, "impulse.c"), _float(raw, "impulse.d")
        )
    if kind == "linear":
        return ImpulseFunction.linear(_float(raw, "impulse.theta"))
    msg = f"unsupported impulse {kind!r} (identity, saturating or linear)"
    raise raw.error("impulse", msg)


def build_experiment(  # noqa: C901
    raw: RawConfig, env: Mapping[str, str] | None = None
) -> ExperimentSpec:
    """Turn parsed values into an `ExperimentSpec`.

    Args:
        raw: Parsed config.
        env: Environment used for the output-directory override
            (`os.environ` when omitted).

    Raises:
        ConfigError: Missing keys or values the dataclasses reject.
    """
    environ = os.environ if env is None else env
    model = {key: _float(raw, key) for key in MODEL_KEYS}
    params = ModelParams(**model, growth=build_growth(raw), impulse=build_impulse(raw))
    init = InitialData.cosine(
        params.s0, _float(raw, "init.u_amp", 0.4), _float(raw, "init.v_amp", 0.1)
    )
    try:
        sim = SimConfig(
            n=_int(raw, "sim.N", SimConfig.n),
            dt=_opt_float(raw, "sim.dt"),
            horizon=_opt_float(raw, "sim.horizon"),
            vanish_eps=_float(raw, "sim.vanish_eps", SimConfig.vanish_eps),
            spread_width=_opt_float(raw, "sim.spread_width"),
            snap_every=_opt_float(raw, "sim.snap_every"),
            dt_min=_float(raw, "sim.dt_min", SimConfig.dt_min),
            impulse_at_start=bool(raw.values.get("sim.impulse_at_start", False)),
            probe_x=_float(raw, "sim.probe_x", SimConfig.probe_x),
            theta=_float(raw, "sim.theta", SimConfig.theta),
        )
        orbit = OrbitConfig(
            n=_int(raw, "orbit.N", OrbitConfig.n),
            steps=_int(raw, "orbit.steps", OrbitConfig.steps),
            tol=_float(raw, "orbit.tol", OrbitConfig.tol),
            max_sweeps=_int(raw, "orbit.max_sweeps", OrbitConfig.max_sweeps),
        )
    except ParameterError as exc:
        raise ConfigError(str(exc), path=raw.path) from exc
    eigen = EigenConfig(
        n=_int(raw, "eigen.N", EigenConfig.n),
        dt=_opt_float(raw, "eigen.dt"),
        tol=_float(raw, "eigen.tol", EigenConfig.tol),
        max_iter=_int(raw, "eigen.max_iter", EigenConfig.max_iter),
    )
    sweep = None
    if "sweep.axis" in raw.values or "sweep.values" in raw.values:
        axis = str(raw.values.get("sweep.axis", ""))
        if axis not in SWEEP_AXES:
            msg = f"sweep.axis {axis!r} is not a sweepable key"
            raise raw.error("sweep.axis", msg)
        values = raw.values.get("sweep.values", [])
        sweep = SweepAxis(
            axis=axis,
            values=tuple(float(v) for v in values),  # type: ignore[union-attr]
            l1=_opt_float(raw, "sweep.l1"),
            l2=_opt_float(raw, "sweep.l2"),
        )
    classify = ClassifyConfig(
        rho=_opt_float(raw, "classify.rho"),
        mu_lo=_opt_float(raw, "classify.mu_lo"),
        mu_hi=_opt_float(raw, "classify.mu_hi"),
        resolution=_opt_float(raw, "classify.resolution"),
    )
    output_dir = environ.get(OUTPUT_DIR_ENV_VAR) or str(
        raw.values.get("output.dir", DEFAULT_OUTPUT_DIR)
    )
    return ExperimentSpec(
        name=str(raw.values.get("name", "experiment")),
        params=params,
        init=init,
        sim=sim,
        eigen=eigen,
        orbit=orbit,
        sweep=sweep,
        classify=classify,
        output_dir=output_dir,
        source=raw,
    )


def read_experiment(
    path: str | Path, env: Mapping[str, str] | None = None
) -> ExperimentSpec:
    return build_experiment(load_config(path), env)


def experiment_from_text(
    text: str, path: str | None = None, env: Mapping[str, str] | None = None
) -> ExperimentSpec:
    return build_experiment(parse_config_text(text, path), env)


def with_axis_value(spec: ExperimentSpec, axis: str, value: float) -> ExperimentSpec:
    """Copy of `spec` with one sweepable key set to `value`.

    The length axis moves the sweep interval instead of the model.
    """
    if axis == LENGTH_AXIS:
        base = spec.sweep or SweepAxis(axis=axis, values=())
        return replace(spec, sweep=replace(base, l1=-value / 2.0, l2=value / 2.0))
    if axis in MODEL_KEYS:
        params = spec.params.with_overrides(**{axis: value})
        init = spec.init
        if axis == "s0":
            init = InitialData.cosine(
                value, spec.init.u_amp or 0.0, spec.init.v_amp or 0.0
            )
        return replace(spec, params=params, init=init)
    group, _, attr = axis.partition(".")
    if group == "growth":
        growth = spec.params.growth
        m = value if attr == "m" else growth.m
        a = value if attr == "a" else growth.a
        new_growth = GrowthFunction.beverton_holt(m, a)
        return replace(spec, params=spec.params.with_overrides(growth=new_growth))
    if group == "impulse":
        imp = spec.params.impulse
        if imp.kind == "saturating" and attr in {"c", "d"}:
            c = value if attr == "c" else imp.c
            d = value if attr == "d" else imp.d
            new_imp = ImpulseFunction.saturating(c, d)
        elif imp.kind == "linear" and attr == "theta":
            new_imp = ImpulseFunction.linear(value)
        else:
            msg = f"impulse kind {imp.kind!r} has no parameter {attr!r}"
            raise ParameterError(msg)
        return replace(spec, params=spec.params.with_overrides(impulse=new_imp))
    msg = f"{axis!r} is not a sweepable key"
    raise ParameterError(msg)


# --- Writing ------------------------------------------------------------------


def effective_values(spec: ExperimentSpec) -> dict[str, ConfigValue]:
    """Every key that reproduces `spec`; unset optional keys are omitted."""
    p = spec.params
    values: dict[str, ConfigValue] = {key: float(getattr(p, key)) for key in MODEL_KEYS}
    values["name"] = spec.name
    values["growth"] = "beverton-holt"
    values["growth.m"] = p.growth.m
    values["growth.a"] = p.growth.a
    values["impulse"] = p.impulse.kind
    if p.impulse.kind == "saturating":
        values["impulse.c"] = p.impulse.c
        values["impulse.d"] = p.impulse.d
    elif p.impulse.kind == "linear":
        values["impulse.theta"] = p.impulse.theta
    values["init.u_amp"] = float(spec.init.u_amp or 0.0)
    values["init.v_amp"] = float(spec.init.v_amp or 0.0)
    sim = spec.sim
    optional: dict[str, float | None] = {
        "sim.dt": sim.dt,
        "sim.horizon": sim.horizon,
        "sim.spread_width": sim.spread_width,
        "sim.snap_every": sim.snap_every,
        "eigen.dt": spec.eigen.dt,
        "classify.rho": spec.classify.rho,
        "classify.mu_lo": spec.classify.mu_lo,
        "classify.mu_hi": spec.classify.mu_hi,
        "classify.resolution": spec.classify.resolution,
    }
    if spec.sweep is not None:
        values["sweep.axis"] = spec.sweep.axis
        values["sweep.values"] = list(spec.sweep.values)
        optional["sweep.l1"] = spec.sweep.l1
        optional["sweep.l2"] = spec.sweep.l2
    values.update({k: v for k, v in optional.items() if v is not None})
    values.update(
        {
            "sim.N": float(sim.n),
            "sim.vanish_eps": sim.vanish_eps,
            "sim.dt_min": sim.dt_min,
            "sim.impulse_at_start": sim.impulse_at_start,
            "sim.probe_x": sim.probe_x,
            "sim.theta": sim.theta,
            "eigen.N": float(spec.eigen.n),
            "eigen.tol": spec.eigen.tol,
            "eigen.max_iter": float(spec.eigen.max_iter),
            "orbit.N": float(spec.orbit.n),
            "orbit.steps": float(spec.orbit.steps),
            "orbit.tol": spec.orbit.tol,
            "orbit.max_sweeps": float(spec.orbit.max_sweeps),
            "output.dir": spec.output_dir,
        }
    )
    return values


def format_value(key: str, value: ConfigValue) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(format_value(key, v) for v in value) + "]"
    if isinstance(value, float):
        if KEY_KINDS.get(key) == "int":
            return str(int(value))
        return repr(value)
    return value


def write_config(spec: ExperimentSpec) -> str:
    """Effective config text, keys sorted."""
    values = effective_values(spec)
    return "".join(
        f"{key} = {format_value(key, values[key])}\n" for key in sorted(values)
    )
