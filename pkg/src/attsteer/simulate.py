"""Closed-loop time integration of the full rigid-body attitude system.

The control law runs at a fixed tick (0.2 s by default).  At each tick
the target quaternion is sampled from the command source, the feedback
torque is computed, mapped to wheel torques through the minimum-norm
allocator, and held constant while the continuous dynamics advance with
fixed-step RK4 substeps.  The dense log keeps every substep so that
intersample behaviour (the whole point of the exercise) is visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .controller import ControllerGains, ControllerState, control_torque
from .dynamics import (
    SpacecraftParams,
    SpacecraftState,
    allocate_torques,
    default_params,
    state_derivative,
)
from .quaternion import normalize

__all__ = ["TrajectoryLog", "integrate_closed_loop", "integrate_free"]

CSV_HEADER = "t,q1,q2,q3,q4,wx,wy,wz,W1,W2,W3,W4,qt1,qt2,qt3,qt4,tcx,tcy,tcz"


@dataclass(frozen=True)
class TrajectoryLog:
    """Dense history of a run; SI units, scalar-last quaternions."""

    times: np.ndarray
    quaternions: np.ndarray
    rates: np.ndarray
    wheel_rates: np.ndarray
    targets: np.ndarray
    control_torques: np.ndarray

    def rates_degps(self) -> np.ndarray:
        return np.degrees(self.rates)

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(CSV_HEADER + "\n")
            for i in range(self.times.size):
                row = np.concatenate(
                    (
                        [self.times[i]],
                        self.quaternions[i],
                        self.rates[i],
                        self.wheel_rates[i],
                        self.targets[i],
                        self.control_torques[i],
                    )
                )
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _substep_count(acs_period: float, dt: float) -> int:
    n = acs_period / dt
    n_round = round(n)
    if n_round < 1 or abs(n - n_round) > 1e-9 * max(n, 1.0):
        raise ValueError(
            f"control period ({acs_period} s) must be an integer multiple of dt ({dt} s)"
        )
    return int(n_round)


def _rk4_step(
    x: np.ndarray,
    t: float,
    dt: float,
    wheel_torques: np.ndarray,
    external: Optional[Callable[[float], np.ndarray]],
    params: SpacecraftParams,
) -> np.ndarray:
    def f(state: np.ndarray, tau: float) -> np.ndarray:
        ext = np.zeros(3) if external is None else np.asarray(external(tau), dtype=float)
        return state_derivative(state, wheel_torques, ext, params)

    k1 = f(x, t)
    k2 = f(x + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = f(x + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = f(x + dt * k3, t + dt)
    out = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out[:4] = normalize(out[:4])
    return out


def integrate_closed_loop(
    command: Callable[[float], np.ndarray],
    duration: float,
    params: Optional[SpacecraftParams] = None,
    gains: Optional[ControllerGains] = None,
    initial_state: Optional[SpacecraftState] = None,
    dt: float = 0.02,
    acs_period: float = 0.2,
    external_torque: Optional[Callable[[float], np.ndarray]] = None,
    limiter_on: bool = False,
) -> TrajectoryLog:
    """Fly the commanded attitude profile and return the dense log.

    ``command(t)`` must return a scalar-last target quaternion; it is
    evaluated only at control ticks.  ``dt`` must divide ``acs_period``.

    The proportional limiter defaults off: in trajectory steering the
    rate constraint lives in the command profile, and capping the error
    would mask exactly the intersample overshoot this harness exists to
    expose.  Enable it for bare step-regulation studies.
    """
    if duration <= 0.0 or dt <= 0.0:
        raise ValueError("duration and dt must be positive")
    params = default_params() if params is None else params
    gains = ControllerGains() if gains is None else gains
    state = SpacecraftState.at_rest() if initial_state is None else initial_state

    substeps = _substep_count(acs_period, dt)
    n_ticks = int(np.ceil(duration / acs_period - 1e-9))
    n_steps = n_ticks * substeps

    times = np.empty(n_steps + 1)
    quats = np.empty((n_steps + 1, 4))
    rates = np.empty((n_steps + 1, 3))
    wheels = np.empty((n_steps + 1, 4))
    targets = np.empty((n_steps + 1, 4))
    torques = np.empty((n_steps + 1, 3))

    x = state.as_array()
    ctrl = ControllerState()
    times[0] = 0.0
    quats[0] = x[:4]
    rates[0] = x[4:7]
    wheels[0] = x[7:]

    idx = 0
    for tick in range(n_ticks):
        t_tick = tick * acs_period
        q_target = np.asarray(command(t_tick), dtype=float)
        tau_c, ctrl = control_torque(
            SpacecraftState.from_array(x),
            q_target,
            gains,
            params,
            ctrl,
            acs_period,
            limiter_on=limiter_on,
        )
        u = allocate_torques(params, -tau_c)
        if idx == 0:
            targets[0] = q_target
            torques[0] = tau_c
        for _ in range(substeps):
            x = _rk4_step(x, times[idx], dt, u, external_torque, params)
            idx += 1
            times[idx] = idx * dt
            quats[idx] = x[:4]
            rates[idx] = x[4:7]
            wheels[idx] = x[7:]
            targets[idx] = q_target
            torques[idx] = tau_c
    return TrajectoryLog(
        times=times,
        quaternions=quats,
        rates=rates,
        wheel_rates=wheels,
        targets=targets,
        control_torques=torques,
    )


def integrate_free(
    initial_state: SpacecraftState,
    duration: float,
    params: Optional[SpacecraftParams] = None,
    dt: float = 0.02,
    external_torque: Optional[Callable[[float], np.ndarray]] = None,
) -> TrajectoryLog:
    """Integrate with wheels unpowered; used for conservation checks."""
    if duration <= 0.0 or dt <= 0.0:
        raise ValueError("duration and dt must be positive")
    params = default_params() if params is None else params
    n_steps = int(np.ceil(duration / dt - 1e-9))
    times = np.empty(n_steps + 1)
    quats = np.empty((n_steps + 1, 4))
    rates = np.empty((n_steps + 1, 3))
    wheels = np.empty((n_steps + 1, 4))

    x = initial_state.as_array()
    times[0] = 0.0
    quats[0] = x[:4]
    rates[0] = x[4:7]
    wheels[0] = x[7:]
    zero_u = np.zeros(params.wheel_axes.shape[1])
    for idx in range(1, n_steps + 1):
        x = _rk4_step(x, times[idx - 1], dt, zero_u, external_torque, params)
        times[idx] = idx * dt
        quats[idx] = x[:4]
        rates[idx] = x[4:7]
        wheels[idx] = x[7:]
    zeros4 = np.zeros((n_steps + 1, 4))
    zeros3 = np.zeros((n_steps + 1, 3))
    return TrajectoryLog(
        times=times,
        quaternions=quats,
        rates=rates,
        wheel_rates=wheels,
        targets=zeros4,
        control_torques=zeros3,
    )
