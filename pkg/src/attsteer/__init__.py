"""Attitude-command steering toolkit.

Simulates a quaternion-error-feedback attitude control loop with a
reaction wheel pyramid, predicts the intersample rate ripple caused by
downsample-and-hold waypoint commanding through fraction-shifted
discrete transfer functions, and replaces the hold with a
Chebyshev-Gauss-Lobatto interpolating filter whose coefficients
compress the whole command trajectory.

Modules:

``quaternion``  scalar-last quaternion algebra and kinematics
``dynamics``    rigid body + wheel pyramid equations of motion
``controller``  error feedback law, limiter, integral gating
``zdomain``     hold-equivalent transfer functions and ripple analysis
``commands``    CGL interpolation, coefficient records, waypoint tables
``profiles``    analytic slew profiles used as command inputs
``singleaxis``  reduced one-axis continuous loop
``simulate``    full closed-loop integrator and trajectory logs
``scenario``    INI scenario files tying the pieces together
``cli``         command-line front end
"""

from .commands import (
    CoefficientRecord,
    FilterCommandSource,
    HeldWaypointSource,
    WaypointTable,
    barycentric_eval,
    barycentric_weights,
    cgl_nodes,
    decode_trajectory,
    encode_trajectory,
    footprint_bytes,
    lagrange_basis,
    load_coefficients,
    load_waypoints,
    save_coefficients,
    save_waypoints,
)
from .controller import ControllerGains, ControllerState, control_torque, gains_to_second_order
from .dynamics import (
    SpacecraftParams,
    SpacecraftState,
    allocate_torques,
    default_params,
    pyramid_layout,
    state_derivative,
    wheel_momentum,
)
from .profiles import EigenaxisProfile, SmoothRateProfile, angle_ramp_deg, reversal_maneuver
from .scenario import ConfigError, ScenarioConfig, ScenarioResult, execute, parse_scenario
from .simulate import TrajectoryLog, integrate_closed_loop, integrate_free
from .singleaxis import SingleAxisLog, integrate_single_axis
from .zdomain import (
    DegenerateSamplingError,
    DiscreteTransferFunction,
    RippleReport,
    equivalent_pole_params,
    gain_curve,
    modified_rate_tf,
    normalizing_gain,
    pole_zero,
    ripple_peak,
    ripple_report,
    samples_per_oscillation,
    simulate_tf,
    steady_state_ripple,
    zoh_rate_tf,
    zoh_rate_tf_factored,
)

__version__ = "0.1.0"
