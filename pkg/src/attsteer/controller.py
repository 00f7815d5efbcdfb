"""Quaternion-error feedback controller with wheel decoupling.

Control law (body torque, N m):

    tau_c = J (Kp e_lim - Kr w + Ki integ) + w x (J w + h_wheels)

with ``e = 2 * vec(q_err)`` twice the vector part of the error
quaternion, ``e_lim`` the optionally rate-limited version of ``e``, and
``integ`` the gated integral of ``e``.  The gyroscopic feedforward term
cancels the momentum coupling so each axis closes a second order loop

    phi'' + Kr phi' + Kp phi = Kp phi_cmd

with natural frequency ``sqrt(Kp)`` and damping ``Kr / (2 sqrt(Kp))``.

The proportional limiter caps the commanded-rate equivalent of the
attitude error: whenever ``Kp * |e| > rate_limit * Kr`` the error is
rescaled to magnitude ``rate_limit * Kr / Kp`` (direction preserved),
which makes a large-angle slew cruise at ``rate_limit``.  It is meant
for step regulation; trajectory steering already embeds its rate
constraints in the command profile, so the harness leaves it off there.

The integral term only accumulates near the target: the gate enables it
when the error rotation angle falls below a threshold and zeroes the
accumulator whenever it switches off, so windup from a long slew never
reaches the wheels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import quaternion as quat
from .dynamics import SpacecraftParams, SpacecraftState, wheel_momentum

__all__ = [
    "ControllerGains",
    "ControllerState",
    "attitude_error_signal",
    "proportional_limiter",
    "integral_gate",
    "control_torque",
    "gains_to_second_order",
]

DEG = np.pi / 180.0


@dataclass(frozen=True)
class ControllerGains:
    """Feedback gains; defaults are the flight-heritage set this package
    is built around (rates in rad/s)."""

    kp: float = 0.057
    ki: float = 0.0023
    kr: float = 0.4
    rate_limit: float = 0.13 * DEG
    integral_threshold: float = 0.25 * DEG

    def __post_init__(self) -> None:
        if self.kp <= 0.0 or self.kr <= 0.0:
            raise ValueError("kp and kr must be positive")
        if self.ki < 0.0:
            raise ValueError("ki must be non-negative")
        if self.rate_limit <= 0.0:
            raise ValueError("rate limit must be positive")
        if self.integral_threshold <= 0.0:
            raise ValueError("integral threshold must be positive")


@dataclass
class ControllerState:
    """Mutable controller memory carried between update ticks."""

    integral: np.ndarray = field(default_factory=lambda: np.zeros(3))
    integral_active: bool = False


def attitude_error_signal(q: np.ndarray, q_target: np.ndarray) -> np.ndarray:
    """Twice the vector part of the error quaternion.

    For small errors this equals the rotation vector from the current
    attitude to the target, in rad.
    """
    return 2.0 * quat.error(q, q_target)[:3]


def proportional_limiter(e: np.ndarray, gains: ControllerGains) -> np.ndarray:
    """Rescale the error signal so Kp*|e| never exceeds rate_limit*Kr."""
    e = np.asarray(e, dtype=float)
    n = np.linalg.norm(e)
    cap = gains.rate_limit * gains.kr / gains.kp
    if n > cap:
        return e * (cap / n)
    return e.copy()


def integral_gate(
    q_err: np.ndarray, threshold: float, state: ControllerState
) -> ControllerState:
    """Enable the integral term near the target, reset it elsewhere.

    ``q_err`` is the (canonicalized) error quaternion; the gate compares
    its rotation angle against ``threshold`` (rad).  Deactivation zeroes
    the accumulator so a subsequent slew starts clean.
    """
    active = quat.rotation_angle(q_err) < threshold
    if active:
        return ControllerState(integral=state.integral.copy(), integral_active=True)
    return ControllerState(integral=np.zeros(3), integral_active=False)


def control_torque(
    state: SpacecraftState,
    q_target: np.ndarray,
    gains: ControllerGains,
    params: SpacecraftParams,
    ctrl: ControllerState,
    dt: float,
    limiter_on: bool = False,
) -> tuple[np.ndarray, ControllerState]:
    """One controller tick: body control torque plus updated memory.

    The integral gate is applied first (using ``gains.integral_threshold``),
    then the accumulator advances by the rectangular rule ``integ += e * dt``
    while active.  ``dt`` is the controller period, not the integrator
    substep.
    """
    if dt <= 0.0:
        raise ValueError("controller period must be positive")
    q_err = quat.error(state.q, q_target)
    e = 2.0 * q_err[:3]
    ctrl = integral_gate(q_err, gains.integral_threshold, ctrl)
    if ctrl.integral_active:
        ctrl = ControllerState(
            integral=ctrl.integral + e * dt, integral_active=True
        )
    e_lim = proportional_limiter(e, gains) if limiter_on else e
    h_total = params.inertia @ state.rate + wheel_momentum(params, state.wheel_rates)
    tau = params.inertia @ (
        gains.kp * e_lim - gains.kr * state.rate + gains.ki * ctrl.integral
    ) + np.cross(state.rate, h_total)
    return tau, ctrl


def gains_to_second_order(gains: ControllerGains) -> tuple[float, float]:
    """(natural frequency rad/s, damping ratio) of the per-axis loop."""
    wn = np.sqrt(gains.kp)
    return wn, gains.kr / (2.0 * wn)
