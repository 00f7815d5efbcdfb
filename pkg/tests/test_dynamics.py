import numpy as np
import pytest

from attsteer import quaternion as quat
from attsteer.dynamics import (
    SpacecraftParams,
    SpacecraftState,
    allocate_torques,
    default_params,
    pyramid_layout,
    state_derivative,
    wheel_momentum,
)
from attsteer.simulate import integrate_free


def test_pyramid_columns_unit_and_full_rank():
    axes = pyramid_layout(45.0)
    np.testing.assert_allclose(np.linalg.norm(axes, axis=0), np.ones(4), atol=1e-15)
    assert np.linalg.matrix_rank(axes) == 3
    np.testing.assert_allclose(axes[2], np.sin(np.radians(45.0)) * np.ones(4))


def test_params_validation():
    good = default_params()
    with pytest.raises(ValueError):
        SpacecraftParams(
            inertia=np.diag([1.0, 1.0, -1.0]),
            wheel_inertia=0.1,
            wheel_axes=good.wheel_axes,
        )
    skew = np.diag([1.0, 2.0, 3.0])
    skew[0, 1] = 0.5
    with pytest.raises(ValueError):
        SpacecraftParams(inertia=skew, wheel_inertia=0.1, wheel_axes=good.wheel_axes)
    with pytest.raises(ValueError):
        SpacecraftParams(
            inertia=good.inertia, wheel_inertia=0.1, wheel_axes=2.0 * good.wheel_axes
        )
    # four copies of one axis cannot span R^3
    degenerate = np.tile([[0.0], [0.0], [1.0]], (1, 4))
    with pytest.raises(ValueError):
        SpacecraftParams(inertia=good.inertia, wheel_inertia=0.1, wheel_axes=degenerate)
    with pytest.raises(ValueError):
        SpacecraftParams(inertia=good.inertia, wheel_inertia=0.0, wheel_axes=good.wheel_axes)


def test_allocation_realizes_commanded_torque():
    params = default_params()
    rng = np.random.default_rng(2)
    for _ in range(10):
        tau = rng.standard_normal(3)
        u = allocate_torques(params, tau)
        np.testing.assert_allclose(params.wheel_axes @ u, tau, atol=1e-12)


def test_allocation_is_minimum_norm():
    params = default_params()
    rng = np.random.default_rng(4)
    tau = rng.standard_normal(3)
    u = allocate_torques(params, tau)
    u_ref, *_ = np.linalg.lstsq(params.wheel_axes, tau, rcond=None)
    np.testing.assert_allclose(u, u_ref, atol=1e-12)


def test_wheel_reaction_torques_body():
    # with the body at rest, the only body torque is the -Z u reaction
    params = default_params()
    state = SpacecraftState.at_rest()
    u = np.array([0.01, -0.02, 0.03, 0.005])
    xdot = state_derivative(state.as_array(), u, np.zeros(3), params)
    np.testing.assert_allclose(
        params.inertia @ xdot[4:7], -params.wheel_axes @ u, atol=1e-15
    )
    np.testing.assert_allclose(xdot[7:], u / params.wheel_inertia, atol=1e-15)


def test_internal_torques_cancel():
    # wheel torques move momentum between body and wheels, never create it
    params = default_params()
    rng = np.random.default_rng(6)
    x = SpacecraftState(
        q=quat.identity(), rate=np.zeros(3), wheel_rates=rng.standard_normal(4)
    ).as_array()
    u = rng.standard_normal(4)
    xdot = state_derivative(x, u, np.zeros(3), params)
    h_dot = params.inertia @ xdot[4:7] + params.wheel_inertia * (
        params.wheel_axes @ xdot[7:]
    )
    np.testing.assert_allclose(h_dot, np.zeros(3), atol=1e-15)


def test_external_torque_enters_body_equation():
    params = default_params()
    tau_ext = np.array([0.1, 0.2, -0.3])
    xdot = state_derivative(
        SpacecraftState.at_rest().as_array(), np.zeros(4), tau_ext, params
    )
    np.testing.assert_allclose(params.inertia @ xdot[4:7], tau_ext, atol=1e-15)


def inertial_momentum(log, params):
    h = (params.inertia @ log.rates.T).T + (
        params.wheel_inertia * (params.wheel_axes @ log.wheel_rates.T)
    ).T
    out = np.empty_like(h)
    for i in range(log.times.size):
        out[i] = quat.rotation_matrix(log.quaternions[i]) @ h[i]
    return out


def test_free_drift_conserves_inertial_momentum():
    params = default_params()
    rng = np.random.default_rng(8)
    state = SpacecraftState(
        q=quat.normalize(rng.standard_normal(4)),
        rate=0.01 * rng.standard_normal(3),
        wheel_rates=50.0 * rng.standard_normal(4),
    )
    log = integrate_free(state, duration=1000.0, params=params, dt=0.2)
    h_inertial = inertial_momentum(log, params)
    h0 = h_inertial[0]
    drift = np.linalg.norm(h_inertial - h0, axis=1) / np.linalg.norm(h0)
    assert drift.max() < 1e-6


def test_state_round_trip():
    rng = np.random.default_rng(10)
    x = rng.standard_normal(11)
    x[:4] /= np.linalg.norm(x[:4])
    state = SpacecraftState.from_array(x)
    np.testing.assert_allclose(state.as_array(), x)
    with pytest.raises(ValueError):
        SpacecraftState.from_array(np.zeros(10))
