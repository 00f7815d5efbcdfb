"""Continuous single-axis reduction of the attitude loop.

With the wheel-decoupling feedforward active, each body axis obeys

    phi'' + 2 zeta wn phi' + wn^2 phi = wn^2 phi_cmd

where ``wn = sqrt(Kp)`` and ``zeta = Kr / (2 sqrt(Kp))``.  This module
integrates that loop with a fixed-step RK4 while the command is updated
at a fixed period and held, which is exactly the setting the z-domain
analysis predicts: the rate logged here is the continuous waveform whose
shifted samples the fraction-shifted transfer functions reproduce.

Angles are degrees and rates deg/s throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["SingleAxisLog", "integrate_single_axis"]


@dataclass(frozen=True)
class SingleAxisLog:
    """Dense time history of one run; all arrays share one length."""

    times: np.ndarray
    angle_deg: np.ndarray
    rate_degps: np.ndarray
    command_deg: np.ndarray

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("t,phi_deg,rate_degps,cmd_deg\n")
            for row in zip(self.times, self.angle_deg, self.rate_degps, self.command_deg):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _check_step_split(period: float, dt: float, what: str) -> int:
    n = period / dt
    n_round = round(n)
    if n_round < 1 or abs(n - n_round) > 1e-9 * max(n, 1.0):
        raise ValueError(f"{what} ({period} s) must be an integer multiple of dt ({dt} s)")
    return int(n_round)


def integrate_single_axis(
    wn: float,
    zeta: float,
    command: Callable[[float], float],
    duration: float,
    dt: float = 0.02,
    command_period: float = 0.2,
) -> SingleAxisLog:
    """Run the loop from rest with a sampled-and-held angle command.

    ``command(t)`` is evaluated only at multiples of ``command_period``
    and held in between, so passing a continuous profile models the
    sample-and-hold command path; the integration step subdivides the
    hold period exactly.  Returns the dense log including t = 0.
    """
    if wn <= 0.0 or zeta <= 0.0:
        raise ValueError("loop parameters must be positive")
    if duration <= 0.0 or dt <= 0.0:
        raise ValueError("duration and dt must be positive")
    substeps = _check_step_split(command_period, dt, "command period")
    n_holds = int(np.ceil(duration / command_period - 1e-9))
    n_steps = n_holds * substeps

    k1_gain = wn * wn
    damping = 2.0 * zeta * wn

    times = np.empty(n_steps + 1)
    angle = np.empty(n_steps + 1)
    rate = np.empty(n_steps + 1)
    cmd_log = np.empty(n_steps + 1)

    y = np.zeros(2)  # [phi, phidot]
    times[0] = 0.0
    angle[0] = 0.0
    rate[0] = 0.0

    def deriv(state: np.ndarray, u: float) -> np.ndarray:
        return np.array(
            [state[1], k1_gain * (u - state[0]) - damping * state[1]]
        )

    idx = 0
    for hold in range(n_holds):
        u = float(command(hold * command_period))
        if idx == 0:
            cmd_log[0] = u
        for _ in range(substeps):
            t = times[idx]
            k1 = deriv(y, u)
            k2 = deriv(y + 0.5 * dt * k1, u)
            k3 = deriv(y + 0.5 * dt * k2, u)
            k4 = deriv(y + dt * k3, u)
            y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            idx += 1
            times[idx] = (idx) * dt
            angle[idx] = y[0]
            rate[idx] = y[1]
            cmd_log[idx] = u
    return SingleAxisLog(times=times, angle_deg=angle, rate_degps=rate, command_deg=cmd_log)
