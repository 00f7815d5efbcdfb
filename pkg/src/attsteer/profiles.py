"""Analytic slew profiles used to generate command trajectories.

Profiles are defined by an eigenaxis angle history with piecewise
rate segments: constant-rate cruises joined by quintic smoothstep
transitions, so the commanded rate is C^2 and an interpolating filter of
moderate order can reproduce the trajectory without corner artifacts.
Angles and rates are kept in degrees here (human-facing numbers);
quaternion and body-rate evaluation convert to SI.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quaternion as quat
from .commands import WaypointTable, encode_trajectory, CoefficientRecord

__all__ = [
    "angle_ramp_deg",
    "SmoothRateProfile",
    "EigenaxisProfile",
    "reversal_maneuver",
]

DEG = np.pi / 180.0


def angle_ramp_deg(rate_degps: float):
    """Constant-rate angle ramp starting at zero; returns angle(t) in deg."""

    def sampler(t: float) -> float:
        return rate_degps * t

    return sampler


def _smoothstep(v: np.ndarray) -> np.ndarray:
    return v * v * v * (10.0 + v * (-15.0 + 6.0 * v))


def _smoothstep_integral(v: np.ndarray) -> np.ndarray:
    # integral of the quintic smoothstep from 0 to v
    return v ** 4 * (2.5 + v * (-3.0 + v))


@dataclass(frozen=True)
class _Segment:
    t_start: float
    t_end: float
    rate_start: float  # deg/s
    rate_end: float
    angle_start: float  # deg, accumulated


class SmoothRateProfile:
    """Piecewise rate history with smooth blends, integrated analytically.

    Built from (duration, target_rate) steps: each step transitions from
    the current rate to the target with a quintic smoothstep spanning
    the whole step (equal rates give a constant-rate cruise).  Outside
    [0, total] the angle holds its boundary value and the rate is zero.
    """

    def __init__(self, steps: list[tuple[float, float]]):
        if not steps:
            raise ValueError("profile needs at least one segment")
        segments = []
        t = 0.0
        angle = 0.0
        rate = 0.0
        for duration, target in steps:
            if duration <= 0.0:
                raise ValueError("segment durations must be positive")
            segments.append(
                _Segment(
                    t_start=t,
                    t_end=t + duration,
                    rate_start=rate,
                    rate_end=target,
                    angle_start=angle,
                )
            )
            angle += duration * (rate + target) / 2.0
            t += duration
            rate = target
        self.segments = segments
        self.duration = t
        self.final_angle = angle

    def rate_degps(self, times) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        scalar = times.ndim == 0
        times = np.atleast_1d(times)
        out = np.zeros_like(times)
        for seg in self.segments:
            mask = (times >= seg.t_start) & (times < seg.t_end)
            if not np.any(mask):
                continue
            v = (times[mask] - seg.t_start) / (seg.t_end - seg.t_start)
            out[mask] = seg.rate_start + (seg.rate_end - seg.rate_start) * _smoothstep(v)
        return float(out[0]) if scalar else out

    def angle_deg(self, times) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        scalar = times.ndim == 0
        times = np.atleast_1d(times)
        out = np.empty_like(times)
        out[times <= 0.0] = 0.0
        out[times >= self.duration] = self.final_angle
        for seg in self.segments:
            mask = (times >= seg.t_start) & (times < seg.t_end)
            if not np.any(mask):
                continue
            d = seg.t_end - seg.t_start
            v = (times[mask] - seg.t_start) / d
            out[mask] = (
                seg.angle_start
                + seg.rate_start * d * v
                + (seg.rate_end - seg.rate_start) * d * _smoothstep_integral(v)
            )
        return float(out[0]) if scalar else out


class EigenaxisProfile:
    """Rotation about a fixed axis following a :class:`SmoothRateProfile`.

    ``scale`` multiplies the angle history (used by the hold-command
    normalization protocol); the axis is normalized at construction.
    """

    def __init__(self, axis, profile: SmoothRateProfile, scale: float = 1.0):
        axis = np.asarray(axis, dtype=float)
        n = np.linalg.norm(axis)
        if n < 1e-12:
            raise ValueError("eigenaxis must be nonzero")
        self.axis = axis / n
        self.profile = profile
        self.scale = scale

    @property
    def duration(self) -> float:
        return self.profile.duration

    def angle_deg(self, times):
        return self.scale * self.profile.angle_deg(times)

    def body_rate(self, times) -> np.ndarray:
        """Body rate vector(s) in rad/s; shape (3,) or (n, 3)."""
        r = self.scale * self.profile.rate_degps(times) * DEG
        if np.ndim(r) == 0:
            return r * self.axis
        return np.outer(r, self.axis)

    def quaternion(self, t: float) -> np.ndarray:
        return quat.from_axis_angle(self.axis, self.angle_deg(t) * DEG)

    def waypoint_table(self, period: float, t_end: float | None = None) -> WaypointTable:
        """Sample the profile every ``period`` seconds through ``t_end``."""
        if period <= 0.0:
            raise ValueError("sampling period must be positive")
        t_end = self.duration if t_end is None else t_end
        n = int(np.floor(t_end / period + 1e-9)) + 1
        times = np.arange(n) * period
        quats = np.array([self.quaternion(t) for t in times])
        return WaypointTable(times=times, quaternions=quats)

    def encode(self, order: int, t_end: float | None = None) -> CoefficientRecord:
        """Filter record of the quaternion history over [0, t_end]."""
        t_end = self.duration if t_end is None else t_end
        return encode_trajectory(self.quaternion, 0.0, t_end, order)


def reversal_maneuver(
    per_axis_rate_degps: float = 0.13,
    axis=(1.0, 1.0, 1.0),
    ramp_up: float = 30.0,
    cruise_fwd: float = 80.0,
    reversal: float = 40.0,
    cruise_back: float = 60.0,
    ramp_down: float = 30.0,
    scale: float = 1.0,
) -> EigenaxisProfile:
    """Three-axis test maneuver: cruise at the rate limit, reverse, return.

    The eigen rate is chosen so the *largest body-axis component* of the
    commanded rate equals ``per_axis_rate_degps``, mimicking a maneuver
    designed against a per-axis slew limit.  Default segment timing
    gives a 240 s profile with cruises long enough for sampled-command
    ripple to reach steady state.
    """
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if n < 1e-12:
        raise ValueError("eigenaxis must be nonzero")
    peak_component = np.abs(axis / n).max()
    eigen_rate = per_axis_rate_degps / peak_component
    profile = SmoothRateProfile(
        [
            (ramp_up, eigen_rate),
            (cruise_fwd, eigen_rate),
            (reversal, -eigen_rate),
            (cruise_back, -eigen_rate),
            (ramp_down, 0.0),
        ]
    )
    return EigenaxisProfile(axis=axis, profile=profile, scale=scale)
