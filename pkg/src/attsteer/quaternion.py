"""Unit quaternion algebra for attitude control.

Conventions used throughout the package:

* Quaternions are length-4 arrays ``[q1, q2, q3, q4]`` with the scalar
  part *last* (``q4``).
* Products follow the Hamilton convention, so rotation matrices compose
  the same way the quaternions do: ``rotation_matrix(multiply(q, p)) ==
  rotation_matrix(q) @ rotation_matrix(p)``.
* ``rotation_matrix(q)`` maps body-frame vectors into the reference
  frame (active rotation ``v' = q v q*``).
* Body angular rate feeds the kinematics through ``qdot = K(w) q`` with
  the skew-symmetric matrix built by :func:`kinematics_matrix`; this is
  equivalent to ``qdot = 0.5 * q (x) [w, 0]``.

The error quaternion returned by :func:`error` rotates the current
attitude onto the target, i.e. ``rotation_matrix(q) @
rotation_matrix(error(q, qt)) == rotation_matrix(qt)``.  Its sign is
canonicalized so the scalar part is non-negative, which keeps the small
angle approximation ``2 * error(q, qt)[:3] ~ rotation vector`` valid on
the short way around.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "identity",
    "normalize",
    "canonical",
    "multiply",
    "conjugate",
    "inverse",
    "rotation_matrix",
    "kinematics_matrix",
    "derivative",
    "error",
    "from_axis_angle",
    "rotation_angle",
    "rotation_axis",
]


def identity() -> np.ndarray:
    """Quaternion for the null rotation, ``[0, 0, 0, 1]``."""
    return np.array([0.0, 0.0, 0.0, 1.0])


def normalize(q: np.ndarray) -> np.ndarray:
    """Rescale ``q`` to unit norm.

    Raises ``ValueError`` for a zero (or numerically zero) quaternion,
    since no direction can be recovered from it.
    """
    q = np.asarray(q, dtype=float)
    n = np.linalg.norm(q)
    if n < 1e-12:
        raise ValueError("cannot normalize a zero quaternion")
    return q / n


def canonical(q: np.ndarray) -> np.ndarray:
    """Flip the sign of ``q`` if needed so the scalar part is >= 0.

    ``q`` and ``-q`` encode the same rotation; the canonical
    representative keeps error angles in [0, pi].
    """
    q = np.asarray(q, dtype=float)
    return -q if q[3] < 0.0 else q.copy()


def multiply(q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Hamilton product ``q (x) p``, scalar-last."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    qv, qs = q[:3], q[3]
    pv, ps = p[:3], p[3]
    vec = qs * pv + ps * qv + np.cross(qv, pv)
    scal = qs * ps - qv @ pv
    return np.array([vec[0], vec[1], vec[2], scal])


def conjugate(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.array([-q[0], -q[1], -q[2], q[3]])


def inverse(q: np.ndarray) -> np.ndarray:
    """Inverse rotation; for the unit quaternions used here this is the
    conjugate."""
    return conjugate(normalize(q))


def rotation_matrix(q: np.ndarray) -> np.ndarray:
    """3x3 direction cosine matrix of the active rotation encoded by ``q``."""
    q = normalize(q)
    v, s = q[:3], q[3]
    vx = np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])
    return (s * s - v @ v) * np.eye(3) + 2.0 * np.outer(v, v) + 2.0 * s * vx


def kinematics_matrix(w: np.ndarray) -> np.ndarray:
    """Skew-symmetric 4x4 matrix ``K(w)`` with ``qdot = K(w) q``.

    ``w`` is the body angular rate in rad/s.
    """
    w1, w2, w3 = np.asarray(w, dtype=float)
    return 0.5 * np.array([
        [0.0, w3, -w2, w1],
        [-w3, 0.0, w1, w2],
        [w2, -w1, 0.0, w3],
        [-w1, -w2, -w3, 0.0],
    ])


def derivative(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Attitude kinematics ``qdot = K(w) q``."""
    return kinematics_matrix(w) @ np.asarray(q, dtype=float)


def error(q: np.ndarray, q_target: np.ndarray) -> np.ndarray:
    """Rotation from the current attitude ``q`` to ``q_target``.

    Computed as ``q^-1 (x) q_target`` and sign-canonicalized.
    """
    return canonical(multiply(inverse(q), normalize(q_target)))


def from_axis_angle(axis: np.ndarray, angle: float) -> np.ndarray:
    """Quaternion for a rotation of ``angle`` rad about ``axis``."""
    axis = np.asarray(axis, dtype=float)
    n = np.linalg.norm(axis)
    if n < 1e-12:
        raise ValueError("rotation axis must be nonzero")
    half = 0.5 * angle
    q = np.empty(4)
    q[:3] = np.sin(half) * axis / n
    q[3] = np.cos(half)
    return q


def rotation_angle(q: np.ndarray) -> float:
    """Rotation angle in [0, pi] encoded by ``q``."""
    q = normalize(q)
    return 2.0 * np.arctan2(np.linalg.norm(q[:3]), abs(q[3]))


def rotation_axis(q: np.ndarray) -> np.ndarray:
    """Unit rotation axis of ``q``; x-axis by convention for the identity."""
    q = canonical(normalize(q))
    n = np.linalg.norm(q[:3])
    if n < 1e-12:
        return np.array([1.0, 0.0, 0.0])
    return q[:3] / n
