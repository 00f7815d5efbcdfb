"""Rigid spacecraft with a redundant reaction wheel cluster.

The plant state is ``x = [q, w, W]``: attitude quaternion (scalar
last), body rate w in rad/s, and the four wheel spin rates W in rad/s.
Dynamics:

    qdot = K(w) q
    wdot = J^-1 ( -w x (J w + Jw Z W) - Z u + tau_ext )
    Wdot = u / Jw

where ``Z`` holds the wheel spin axes as columns, ``u`` is the motor
torque applied to each wheel, and the ``-Z u`` reaction is what
actually steers the body.  With ``u = 0`` and no external torque the
total angular momentum expressed in the reference frame,
``R(q) (J w + Jw Z W)``, is conserved; the integration tests lean on
that invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import quaternion as quat

__all__ = [
    "SpacecraftParams",
    "SpacecraftState",
    "pyramid_layout",
    "default_params",
    "wheel_momentum",
    "state_derivative",
    "allocate_torques",
]


def pyramid_layout(cant_deg: float = 45.0) -> np.ndarray:
    """Spin axes of a four-wheel pyramid, one wheel per body quadrant.

    Each axis is elevated ``cant_deg`` above the x-y plane; azimuths are
    0, 90, 180, 270 degrees.  Returns a 3x4 matrix of unit columns with
    rank 3 for any cant angle strictly between 0 and 90 degrees.
    """
    cant = np.radians(cant_deg)
    c, s = np.cos(cant), np.sin(cant)
    axes = np.array([
        [c, 0.0, -c, 0.0],
        [0.0, c, 0.0, -c],
        [s, s, s, s],
    ])
    return axes


@dataclass
class SpacecraftParams:
    """Physical plant constants.

    inertia
        Body inertia tensor, kg m^2.  Must be symmetric positive
        definite.
    wheel_inertia
        Spin-axis inertia of one wheel, kg m^2 (all four identical).
    wheel_axes
        3x4 matrix whose columns are the wheel spin axes in the body
        frame.  Columns must be unit length and span R^3.
    """

    inertia: np.ndarray
    wheel_inertia: float
    wheel_axes: np.ndarray
    inertia_inv: np.ndarray = field(init=False, repr=False)
    axes_pinv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.inertia = np.asarray(self.inertia, dtype=float)
        self.wheel_axes = np.asarray(self.wheel_axes, dtype=float)
        if self.inertia.shape != (3, 3):
            raise ValueError("inertia must be a 3x3 matrix")
        if not np.allclose(self.inertia, self.inertia.T, atol=1e-9):
            raise ValueError("inertia must be symmetric")
        if np.any(np.linalg.eigvalsh(self.inertia) <= 0.0):
            raise ValueError("inertia must be positive definite")
        if self.wheel_inertia <= 0.0:
            raise ValueError("wheel inertia must be positive")
        if self.wheel_axes.shape != (3, 4):
            raise ValueError("wheel_axes must be 3x4 (one column per wheel)")
        norms = np.linalg.norm(self.wheel_axes, axis=0)
        if not np.allclose(norms, 1.0, atol=1e-12):
            raise ValueError("wheel axes must be unit length")
        if np.linalg.matrix_rank(self.wheel_axes) != 3:
            raise ValueError("wheel axes must span R^3")
        self.inertia_inv = np.linalg.inv(self.inertia)
        z = self.wheel_axes
        self.axes_pinv = z.T @ np.linalg.inv(z @ z.T)


def default_params() -> SpacecraftParams:
    """Representative observatory-class plant: J = diag(1000, 1500, 2000)
    kg m^2, 0.1 kg m^2 wheels on a 45 degree pyramid."""
    return SpacecraftParams(
        inertia=np.diag([1000.0, 1500.0, 2000.0]),
        wheel_inertia=0.1,
        wheel_axes=pyramid_layout(45.0),
    )


@dataclass
class SpacecraftState:
    """Instantaneous plant state; see module docstring for layout."""

    q: np.ndarray
    rate: np.ndarray
    wheel_rates: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.q, self.rate, self.wheel_rates])

    @classmethod
    def from_array(cls, x: np.ndarray) -> "SpacecraftState":
        x = np.asarray(x, dtype=float)
        if x.shape != (11,):
            raise ValueError("state vector must have 11 components")
        return cls(q=x[:4].copy(), rate=x[4:7].copy(), wheel_rates=x[7:].copy())

    @classmethod
    def at_rest(cls, q: np.ndarray | None = None) -> "SpacecraftState":
        return cls(
            q=quat.identity() if q is None else quat.normalize(q),
            rate=np.zeros(3),
            wheel_rates=np.zeros(4),
        )


def wheel_momentum(params: SpacecraftParams, wheel_rates: np.ndarray) -> np.ndarray:
    """Angular momentum stored in the wheel cluster, body frame."""
    return params.wheel_inertia * (params.wheel_axes @ np.asarray(wheel_rates, dtype=float))


def state_derivative(
    x: np.ndarray,
    wheel_torques: np.ndarray,
    external_torque: np.ndarray,
    params: SpacecraftParams,
) -> np.ndarray:
    """Time derivative of the 11-component state vector."""
    q = x[:4]
    w = x[4:7]
    big_w = x[7:]
    h_total = params.inertia @ w + params.wheel_inertia * (params.wheel_axes @ big_w)
    qdot = quat.derivative(q, w)
    wdot = params.inertia_inv @ (
        -np.cross(w, h_total) - params.wheel_axes @ wheel_torques + external_torque
    )
    big_wdot = np.asarray(wheel_torques, dtype=float) / params.wheel_inertia
    return np.concatenate([qdot, wdot, big_wdot])


def allocate_torques(params: SpacecraftParams, torque: np.ndarray) -> np.ndarray:
    """Minimum-norm wheel torques realizing a commanded cluster torque.

    Moore-Penrose allocation ``u = Z^T (Z Z^T)^-1 torque``, so that
    ``Z u = torque`` exactly.  Note the caller decides the sign
    convention: to push the *body* with ``tau`` through the ``-Z u``
    reaction, allocate ``-tau``.
    """
    return params.axes_pinv @ np.asarray(torque, dtype=float)
