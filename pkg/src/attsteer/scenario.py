"""INI-driven scenario runs: maneuver + command path + outputs.

A scenario file picks one slew maneuver and one way of delivering it to
the controller:

``hold``
    Downsample the attitude profile every ``period`` seconds and hold
    each waypoint.  With ``gain_normalize = true`` the commanded angle
    is pre-scaled by the steady-state gain of the sampled loop so the
    achieved mean rate matches the requested one (the scaling the rate
    ripple figures assume).

``filter``
    Compress the whole profile into Chebyshev-Gauss-Lobatto filter
    coefficients of the given order and command the interpolated,
    renormalized quaternion at every control tick.

``continuous``
    Evaluate the analytic profile directly at each control tick; the
    reference case with no downsampling.

Example::

    [scenario]
    mode = hold
    duration = 240
    dt = 0.02

    [command]
    period = 10
    gain_normalize = true

    [output]
    csv = run.csv
    plots = true
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .commands import (
    CoefficientRecord,
    FilterCommandSource,
    HeldWaypointSource,
    WaypointTable,
    footprint_bytes,
)
from .controller import ControllerGains, gains_to_second_order
from .profiles import EigenaxisProfile, reversal_maneuver
from .simulate import TrajectoryLog, integrate_closed_loop
from .zdomain import normalizing_gain, zoh_rate_tf

__all__ = ["ConfigError", "ScenarioConfig", "ScenarioResult", "parse_scenario", "execute"]

_MODES = ("hold", "filter", "continuous")


class ConfigError(ValueError):
    """Scenario file is missing, malformed, or inconsistent."""


@dataclass
class ScenarioConfig:
    mode: str = "continuous"
    duration: float = 240.0
    dt: float = 0.02
    control_period: float = 0.2
    axis: tuple[float, float, float] = (1.0, 1.0, 1.0)
    rate_degps: float = 0.13
    ramp_up: float = 30.0
    cruise_fwd: float = 80.0
    reversal: float = 40.0
    cruise_back: float = 60.0
    ramp_down: float = 30.0
    hold_period: float = 10.0
    gain_normalize: bool = True
    filter_order: int = 50
    limiter: bool = False
    csv_name: str = "run.csv"
    plots: bool = False

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {_MODES}, got {self.mode!r}")
        for name in ("duration", "dt", "control_period", "rate_degps", "hold_period"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.filter_order < 1:
            raise ConfigError("filter order must be at least 1")
        if not np.any(np.asarray(self.axis, dtype=float)):
            raise ConfigError("rotation axis must be nonzero")


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    log: TrajectoryLog
    csv_path: str
    plot_paths: list[str] = field(default_factory=list)
    footprint: Optional[int] = None
    gain_scale: float = 1.0


def _get(parser, section, option, cast, default):
    if not parser.has_option(section, option):
        return default
    raw = parser.get(section, option)
    try:
        if cast is bool:
            return parser.getboolean(section, option)
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {option} = {raw!r}: {exc}") from exc


def parse_scenario(path: str | os.PathLike) -> ScenarioConfig:
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"bad scenario file {path}: {exc}") from exc

    known = {"scenario", "maneuver", "command", "output"}
    extra = set(parser.sections()) - known
    if extra:
        raise ConfigError(f"unknown sections: {sorted(extra)}")

    axis_raw = _get(parser, "maneuver", "axis", str, "1,1,1")
    try:
        axis = tuple(float(v) for v in axis_raw.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad axis {axis_raw!r}") from exc
    if len(axis) != 3:
        raise ConfigError("axis needs three comma-separated components")

    return ScenarioConfig(
        mode=_get(parser, "scenario", "mode", str, "continuous"),
        duration=_get(parser, "scenario", "duration", float, 240.0),
        dt=_get(parser, "scenario", "dt", float, 0.02),
        control_period=_get(parser, "scenario", "control_period", float, 0.2),
        axis=axis,
        rate_degps=_get(parser, "maneuver", "rate_degps", float, 0.13),
        ramp_up=_get(parser, "maneuver", "ramp_up", float, 30.0),
        cruise_fwd=_get(parser, "maneuver", "cruise_fwd", float, 80.0),
        reversal=_get(parser, "maneuver", "reversal", float, 40.0),
        cruise_back=_get(parser, "maneuver", "cruise_back", float, 60.0),
        ramp_down=_get(parser, "maneuver", "ramp_down", float, 30.0),
        hold_period=_get(parser, "command", "period", float, 10.0),
        gain_normalize=_get(parser, "command", "gain_normalize", bool, True),
        filter_order=_get(parser, "command", "order", int, 50),
        limiter=_get(parser, "scenario", "limiter", bool, False),
        csv_name=_get(parser, "output", "csv", str, "run.csv"),
        plots=_get(parser, "output", "plots", bool, False),
    )


def build_profile(config: ScenarioConfig, scale: float = 1.0) -> EigenaxisProfile:
    return reversal_maneuver(
        per_axis_rate_degps=config.rate_degps,
        axis=config.axis,
        ramp_up=config.ramp_up,
        cruise_fwd=config.cruise_fwd,
        reversal=config.reversal,
        cruise_back=config.cruise_back,
        ramp_down=config.ramp_down,
        scale=scale,
    )


def execute(config: ScenarioConfig, out_dir: str | os.PathLike = ".") -> ScenarioResult:
    """Run the scenario, write the CSV (and figures if asked), return paths."""
    gains = ControllerGains()
    scale = 1.0
    footprint = None

    if config.mode == "hold" and config.gain_normalize:
        wn, zeta = gains_to_second_order(gains)
        scale = normalizing_gain(zoh_rate_tf(wn, zeta, config.hold_period))
    profile = build_profile(config, scale=scale)

    if config.mode == "hold":
        table = profile.waypoint_table(config.hold_period, config.duration)
        source = HeldWaypointSource(table)
        command = source.target
        footprint = footprint_bytes(table)
    elif config.mode == "filter":
        record = profile.encode(config.filter_order, config.duration)
        source = FilterCommandSource(record)
        command = source.target
        footprint = footprint_bytes(record)
    else:
        command = profile.quaternion

    log = integrate_closed_loop(
        command,
        config.duration,
        gains=gains,
        dt=config.dt,
        acs_period=config.control_period,
        limiter_on=config.limiter,
    )

    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(os.fspath(out_dir), config.csv_name)
    log.write_csv(csv_path)

    plot_paths: list[str] = []
    if config.plots:
        from . import plotting

        stem = os.path.splitext(csv_path)[0]
        plot_paths.append(plotting.plot_rates(log, stem + "_rates.svg"))
        plot_paths.append(plotting.plot_attitude(log, stem + "_attitude.svg"))
    return ScenarioResult(
        config=config,
        log=log,
        csv_path=csv_path,
        plot_paths=plot_paths,
        footprint=footprint,
        gain_scale=scale,
    )
