import numpy as np
import pytest

from attsteer import quaternion as quat


def random_unit(rng, n=1):
    q = rng.standard_normal((n, 4))
    q /= np.linalg.norm(q, axis=1)[:, None]
    return q[0] if n == 1 else q


def rodrigues(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    ax = np.array([
        [0.0, -axis[2], axis[1]],
        [axis[2], 0.0, -axis[0]],
        [-axis[1], axis[0], 0.0],
    ])
    return np.eye(3) + np.sin(angle) * ax + (1.0 - np.cos(angle)) * (ax @ ax)


def test_identity_is_null_rotation():
    np.testing.assert_allclose(quat.rotation_matrix(quat.identity()), np.eye(3))


def test_normalize_zero_raises():
    with pytest.raises(ValueError):
        quat.normalize(np.zeros(4))


def test_canonical_flips_negative_scalar():
    q = np.array([0.1, 0.2, 0.3, -0.5])
    out = quat.canonical(q)
    assert out[3] > 0.0
    np.testing.assert_allclose(out, -q)
    np.testing.assert_allclose(quat.canonical(-q), -q)


def test_rotation_matrix_is_special_orthogonal():
    rng = np.random.default_rng(11)
    for q in random_unit(rng, 8):
        dcm = quat.rotation_matrix(q)
        np.testing.assert_allclose(dcm @ dcm.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.linalg.det(dcm), 1.0, atol=1e-12)


def test_axis_angle_matches_rodrigues():
    rng = np.random.default_rng(5)
    for _ in range(8):
        axis = rng.standard_normal(3)
        angle = rng.uniform(0.0, np.pi)
        q = quat.from_axis_angle(axis, angle)
        np.testing.assert_allclose(
            quat.rotation_matrix(q), rodrigues(axis, angle), atol=1e-12
        )


def test_product_composes_rotation_matrices():
    # pins the Hamilton convention: no transpose, no swapped order
    rng = np.random.default_rng(3)
    for _ in range(8):
        p, q = random_unit(rng, 2)
        np.testing.assert_allclose(
            quat.rotation_matrix(quat.multiply(p, q)),
            quat.rotation_matrix(p) @ quat.rotation_matrix(q),
            atol=1e-12,
        )


def test_inverse_cancels():
    rng = np.random.default_rng(7)
    for q in random_unit(rng, 6):
        np.testing.assert_allclose(
            quat.multiply(q, quat.inverse(q)), quat.identity(), atol=1e-12
        )


def test_error_takes_current_onto_target():
    rng = np.random.default_rng(13)
    for _ in range(8):
        q, qt = random_unit(rng, 2)
        q_err = quat.error(q, qt)
        assert q_err[3] >= 0.0
        np.testing.assert_allclose(
            quat.rotation_matrix(q) @ quat.rotation_matrix(q_err),
            quat.rotation_matrix(qt),
            atol=1e-12,
        )


def test_error_at_target_is_identity():
    q = quat.from_axis_angle([1.0, 2.0, -1.0], 0.7)
    np.testing.assert_allclose(quat.error(q, q), quat.identity(), atol=1e-15)
    # the sign ambiguity q ~ -q must not produce a fake 360 deg error
    np.testing.assert_allclose(quat.error(q, -q), quat.identity(), atol=1e-15)


def test_axis_angle_round_trip():
    rng = np.random.default_rng(17)
    for _ in range(8):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.05, np.pi - 0.05)
        q = quat.from_axis_angle(axis, angle)
        np.testing.assert_allclose(quat.rotation_angle(q), angle, atol=1e-12)
        np.testing.assert_allclose(quat.rotation_axis(q), axis, atol=1e-12)


def test_kinematics_matrix_is_skew():
    w = np.array([0.3, -0.2, 0.5])
    mat = quat.kinematics_matrix(w)
    np.testing.assert_allclose(mat + mat.T, np.zeros((4, 4)), atol=1e-15)


def test_derivative_matches_product_form():
    rng = np.random.default_rng(19)
    q = random_unit(rng)
    w = rng.standard_normal(3)
    expected = 0.5 * quat.multiply(q, np.array([w[0], w[1], w[2], 0.0]))
    np.testing.assert_allclose(quat.derivative(q, w), expected, atol=1e-14)


def test_constant_rate_integrates_to_axis_angle():
    # analytic solution of qdot = K(w) q for constant w
    w = np.array([0.0, 0.0, 0.2])
    t = 3.0
    q0 = quat.identity()
    steps = 3000
    dt = t / steps
    q = q0
    for _ in range(steps):
        k1 = quat.derivative(q, w)
        k2 = quat.derivative(q + 0.5 * dt * k1, w)
        k3 = quat.derivative(q + 0.5 * dt * k2, w)
        k4 = quat.derivative(q + dt * k3, w)
        q = q + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    expected = quat.from_axis_angle(w, np.linalg.norm(w) * t)
    np.testing.assert_allclose(q, expected, atol=1e-9)
    np.testing.assert_allclose(np.linalg.norm(q), 1.0, atol=1e-9)
