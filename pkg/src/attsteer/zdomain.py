"""Sampled-command rate ripple analysis for the per-axis attitude loop.

The wheel-decoupled attitude loop reduces per axis to

    rate(s) / cmd(s) = Kp s / (s^2 + Kr s + Kp)

driven by an angle command that is sampled every ``T`` seconds and held.
Discretizing with a zero order hold gives a two-pole transfer function
in z whose output matches the continuous rate *at* the sample instants.
Between samples the held staircase excites a decaying oscillation the
sampled model cannot see.  Shifting the sampling comb by a fraction
``m`` of a period (the fractional-delay transform implemented by
:func:`modified_rate_tf`) recovers the continuous waveform one offset at
a time: output index ``k`` of the shifted system is the continuous rate
at ``t = (k + m) T``.

Steady-state analysis of a rate-limited ramp command uses the discrete
final value theorem.  Because a held staircase feeds the loop less
energy than the underlying ramp, the sampled steady rate undershoots the
ramp slope; the conventional fix is to scale the command by the gain
factor ``K`` returned by :func:`normalizing_gain` so the *sampled*
steady rate equals the slew-rate limit.  Under that normalization the
intersample ripple peaks well above the limit for slow command rates:
:func:`ripple_peak` locates the worst-case offset ``m*`` and the peak
rate in deg/s, reproducing the published sweep (peak 0.268 deg/s at a
10 s hold for the default loop, against a 0.13 deg/s limit).

Conventions: transfer function coefficients are stored in descending
powers of z; the fraction ``m`` lives in [0, 1); rates entering or
leaving the steady-state helpers are deg/s while everything else is SI.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "DegenerateSamplingError",
    "DiscreteTransferFunction",
    "PlantPoles",
    "RippleReport",
    "plant_poles",
    "zoh_rate_tf",
    "zoh_rate_tf_factored",
    "modified_rate_tf",
    "simulate_tf",
    "normalizing_gain",
    "gain_curve",
    "equivalent_pole_params",
    "samples_per_oscillation",
    "steady_state_ripple",
    "ripple_peak",
    "pole_zero",
    "ripple_report",
]

DEFAULT_RATE_LIMIT_DEGPS = 0.13


class DegenerateSamplingError(ArithmeticError):
    """Sampling period lands on the loop's oscillation zeros.

    When the damped frequency times the period is a multiple of pi the
    held-command numerator collapses and fewer than two samples cover
    each oscillation, so the discrete model carries no usable rate
    information.  Raised instead of returning an identically zero
    transfer function.
    """


@dataclass(frozen=True)
class PlantPoles:
    """Continuous poles of the closed per-axis loop.

    ``a`` and ``b`` are the s-plane pole locations (conjugate pair when
    underdamped, both real when overdamped); they satisfy
    ``a * b = wn**2`` and ``a + b = -2 zeta wn``.
    """

    a: complex
    b: complex
    natural_frequency: float
    damping: float


@dataclass(frozen=True)
class DiscreteTransferFunction:
    """Rational function of z with real coefficients, descending powers.

    ``gain_factor`` is the command normalization K associated with this
    system (see :func:`normalizing_gain`); it is carried as metadata and
    never applied implicitly by :func:`simulate_tf`.
    """

    num: np.ndarray
    den: np.ndarray
    period: float
    gain_factor: float = 1.0

    def __post_init__(self) -> None:
        num = np.atleast_1d(np.asarray(self.num, dtype=float))
        den = np.atleast_1d(np.asarray(self.den, dtype=float))
        if den.size == 0 or abs(den[0]) < 1e-300:
            raise ValueError("denominator must have a nonzero leading coefficient")
        if num.size > den.size:
            raise ValueError("transfer function must be proper")
        if self.period <= 0.0:
            raise ValueError("sampling period must be positive")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, z: complex) -> complex:
        return np.polyval(self.num, z) / np.polyval(self.den, z)


def plant_poles(wn: float, zeta: float) -> PlantPoles:
    """Continuous pole pair for natural frequency ``wn`` and damping ``zeta``."""
    if wn <= 0.0:
        raise ValueError("natural frequency must be positive")
    if zeta <= 0.0:
        raise ValueError("damping ratio must be positive")
    if zeta < 1.0:
        wd = wn * np.sqrt(1.0 - zeta * zeta)
        a = complex(-zeta * wn, wd)
        b = complex(-zeta * wn, -wd)
    else:
        spread = wn * np.sqrt(zeta * zeta - 1.0)
        a = complex(-zeta * wn + spread, 0.0)
        b = complex(-zeta * wn - spread, 0.0)
    return PlantPoles(a=a, b=b, natural_frequency=wn, damping=zeta)


def _decay_params(wn: float, zeta: float) -> tuple[complex, complex]:
    """Negated pole locations: exponents with positive real part so the
    held-response samples are ``exp(-alpha k T)`` terms."""
    p = plant_poles(wn, zeta)
    return -p.a, -p.b


def _check_degenerate(wn: float, zeta: float, period: float) -> None:
    if zeta < 1.0:
        wd = wn * np.sqrt(1.0 - zeta * zeta)
        if abs(np.sin(wd * period)) < 1e-12:
            raise DegenerateSamplingError(
                "sampling period hits the oscillation zeros "
                f"(damped frequency * period = {wd * period / np.pi:.3f} pi); "
                "intersample analysis is undefined at this rate"
            )


def zoh_rate_tf(wn: float, zeta: float, period: float) -> DiscreteTransferFunction:
    """Hold-equivalent discrete transfer function, command angle to rate.

    Underdamped closed form::

        g0 (z - 1) / (z^2 - 2 exp(-zeta wn T) cos(wd T) z + exp(-2 zeta wn T))
        g0 = wn / sqrt(1 - zeta^2) * exp(-zeta wn T) * sin(wd T)

    with ``wd = wn sqrt(1 - zeta^2)``.  Critically damped and overdamped
    loops route through the factored form instead.  The output sequence
    equals the continuous rate at the sample instants ``k T``.
    """
    if period <= 0.0:
        raise ValueError("sampling period must be positive")
    if zeta >= 1.0:
        return zoh_rate_tf_factored(wn, zeta, period)
    _check_degenerate(wn, zeta, period)
    wd = wn * np.sqrt(1.0 - zeta * zeta)
    decay = np.exp(-zeta * wn * period)
    g0 = wn / np.sqrt(1.0 - zeta * zeta) * decay * np.sin(wd * period)
    num = g0 * np.array([1.0, -1.0])
    den = np.array([1.0, -2.0 * decay * np.cos(wd * period), decay * decay])
    return DiscreteTransferFunction(num=num, den=den, period=period)


def zoh_rate_tf_factored(
    wn: float, zeta: float, period: float
) -> DiscreteTransferFunction:
    """Same system built from the factored plant ``a b / ((s+a)(s+b))``.

    The step-invariant samples are differenced in z, giving

        num = a b / (b - a) (exp(-aT) - exp(-bT)) (z - 1)
        den = (z - exp(-aT)) (z - exp(-bT))

    where ``a, b`` are the negated continuous poles.  Must agree with
    :func:`zoh_rate_tf` to rounding for the underdamped case; also covers
    repeated and real poles via the appropriate limits.
    """
    if period <= 0.0:
        raise ValueError("sampling period must be positive")
    _check_degenerate(wn, zeta, period)
    alpha, beta = _decay_params(wn, zeta)
    ea, eb = np.exp(-alpha * period), np.exp(-beta * period)
    if abs(beta - alpha) < 1e-12 * abs(alpha):
        g0 = alpha * alpha * period * ea
    else:
        g0 = alpha * beta * (ea - eb) / (beta - alpha)
    num = g0 * np.array([1.0, -1.0])
    den = np.array([1.0, -(ea + eb), ea * eb])
    if max(abs(num.imag).max(), abs(den.imag).max()) > 1e-9:
        raise ArithmeticError("factored hold equivalent produced complex coefficients")
    return DiscreteTransferFunction(num=num.real, den=den.real, period=period)


def _shifted_numerator_pair(wn, zeta, period, m):
    """Coefficients (c1, c2) of the fraction-shifted numerator
    ``(c1 z + c2)(z - 1)``; broadcasts over ``m``."""
    m = np.asarray(m, dtype=float)
    alpha, beta = _decay_params(wn, zeta)
    if abs(beta - alpha) < 1e-12 * abs(alpha):
        c1 = alpha * alpha * m * period * np.exp(-alpha * m * period)
        c2 = (
            alpha
            * alpha
            * (1.0 - m)
            * period
            * np.exp(-alpha * (1.0 + m) * period)
        )
    else:
        scale = alpha * beta / (beta - alpha)
        c1 = scale * (np.exp(-alpha * m * period) - np.exp(-beta * m * period))
        c2 = scale * (
            np.exp(-alpha * period) * np.exp(-beta * m * period)
            - np.exp(-beta * period) * np.exp(-alpha * m * period)
        )
    c1 = np.asarray(c1, dtype=complex)
    c2 = np.asarray(c2, dtype=complex)
    if max(abs(c1.imag).max(), abs(c2.imag).max()) > 1e-9:
        raise ArithmeticError("shifted numerator produced complex coefficients")
    return c1.real, c2.real


def modified_rate_tf(
    wn: float, zeta: float, period: float, m: float
) -> DiscreteTransferFunction:
    """Discrete system whose output k is the continuous rate at (k + m) T.

    Same denominator as :func:`zoh_rate_tf` for every ``m`` (the shift
    moves the sampling comb, not the poles); the numerator gains a zero
    on the negative real axis.  ``m = 0`` reduces exactly to the
    unshifted system.  Underdamped numerator::

        wn / sqrt(1 - zeta^2) *
        (exp(-zeta wn T m) sin(wd T m) z
         + exp(-zeta wn T (1+m)) sin(wd T (1-m))) * (z - 1)
    """
    if not 0.0 <= m < 1.0:
        raise ValueError("fractional offset m must lie in [0, 1)")
    if period <= 0.0:
        raise ValueError("sampling period must be positive")
    _check_degenerate(wn, zeta, period)
    c1, c2 = _shifted_numerator_pair(wn, zeta, period, m)
    c1, c2 = float(c1), float(c2)
    num = np.array([c1, c2 - c1, -c2])
    if abs(c1) < 1e-300:
        num = num[1:]
    base = zoh_rate_tf_factored(wn, zeta, period)
    return DiscreteTransferFunction(num=num, den=base.den.copy(), period=period)


def simulate_tf(tf: DiscreteTransferFunction, inputs: np.ndarray) -> np.ndarray:
    """Drive the difference equation from rest; zero initial conditions."""
    u = np.asarray(inputs, dtype=float)
    if u.ndim != 1:
        raise ValueError("input sequence must be one-dimensional")
    if not np.all(np.isfinite(u)):
        raise ValueError("input sequence contains non-finite samples")
    num = np.concatenate([np.zeros(tf.den.size - tf.num.size), tf.num])
    return lfilter(num, tf.den, u)


def _ramp_fvt(tf: DiscreteTransferFunction) -> float:
    """Final value of the output for a unit-slope ramp command.

    The command samples are ``k T``; by the discrete final value theorem
    the limit is ``T * num'(1) / den(1)`` (the numerator carries a zero
    at z = 1, cancelled analytically via the derivative).
    """
    num1 = np.polyval(tf.num, 1.0)
    scale = np.abs(tf.num).max()
    if scale == 0.0 or abs(num1) > 1e-9 * scale:
        raise ValueError(
            "ramp final value requires the hold-equivalent structure "
            "(numerator zero at z = 1)"
        )
    den1 = np.polyval(tf.den, 1.0)
    if abs(den1) < 1e-300:
        raise ArithmeticError("zero final-value denominator: pole at z = 1")
    return tf.period * np.polyval(np.polyder(tf.num), 1.0) / den1


def normalizing_gain(
    tf: DiscreteTransferFunction, period: float | None = None
) -> float:
    """Command scale K making the sampled ramp response settle at the slope.

    K multiplies the command staircase; ``K * ramp_final_value == 1`` for
    a unit-slope ramp by construction.
    """
    if period is not None and abs(period - tf.period) > 1e-12:
        raise ValueError("period disagrees with the transfer function")
    limit = _ramp_fvt(tf)
    if abs(limit) < 1e-300:
        raise ArithmeticError("ramp response converges to zero; gain undefined")
    return 1.0 / limit


def gain_curve(
    wn: float, zeta: float, period: float, m_values: np.ndarray | None = None
) -> np.ndarray:
    """Normalizing gain across the intersample offset, in dB.

    Returns an (n, 2) array of ``(m, 20 log10 K(m))``.  The spread of
    this curve is the ripple severity: its max/min gain ratio is about 2
    (6 dB) for the default loop held at 10 s.
    """
    if m_values is None:
        m_values = np.linspace(0.0, 0.99, 100)
    m_values = np.asarray(m_values, dtype=float)
    _check_degenerate(wn, zeta, period)
    c1, c2 = _shifted_numerator_pair(wn, zeta, period, m_values)
    base = zoh_rate_tf_factored(wn, zeta, period)
    den1 = np.polyval(base.den, 1.0)
    limits = period * (c1 + c2) / den1
    if np.any(np.abs(limits) < 1e-300):
        raise ArithmeticError("ramp response converges to zero; gain undefined")
    gains_db = 20.0 * np.log10(np.abs(1.0 / limits))
    return np.column_stack([m_values, gains_db])


def equivalent_pole_params(z_pole: complex, period: float) -> tuple[float, float]:
    """Continuous (wn, zeta) whose discretization owns the given z pole.

    Principal branch of the logarithm: valid while the pole's damped
    frequency stays below the Nyquist rate.
    """
    if period <= 0.0:
        raise ValueError("sampling period must be positive")
    if z_pole == 0:
        raise ValueError("pole at z = 0 has no continuous equivalent")
    s = np.log(complex(z_pole)) / period
    wn_eq = abs(s)
    if wn_eq == 0.0:
        raise ValueError("pole at z = 1 maps to a pure integrator")
    zeta_eq = -np.cos(np.angle(s))
    return wn_eq, zeta_eq


def samples_per_oscillation(wn_eq: float, zeta_eq: float, period: float) -> float:
    """Hold periods per damped oscillation, ``2 pi / (wn T sqrt(1 - zeta^2))``."""
    if period <= 0.0:
        raise ValueError("sampling period must be positive")
    if not -1.0 < zeta_eq < 1.0:
        raise ValueError("oscillation count needs an underdamped pair")
    if wn_eq <= 0.0:
        raise ValueError("natural frequency must be positive")
    return 2.0 * np.pi / (wn_eq * period * np.sqrt(1.0 - zeta_eq * zeta_eq))


def steady_state_ripple(
    wn: float,
    zeta: float,
    period: float,
    m,
    rate_limit_degps: float = DEFAULT_RATE_LIMIT_DEGPS,
):
    """Steady intersample rate at offset ``m`` for the normalized ramp.

    Final value of the fraction-shifted system driven by the ramp
    command scaled so the unshifted (m = 0) samples settle exactly at
    ``rate_limit_degps``.  Broadcasts over ``m``; returns deg/s.
    """
    m_arr = np.asarray(m, dtype=float)
    if np.any(m_arr < 0.0) or np.any(m_arr >= 1.0):
        raise ValueError("fractional offset m must lie in [0, 1)")
    _check_degenerate(wn, zeta, period)
    c1, c2 = _shifted_numerator_pair(wn, zeta, period, m_arr)
    c1_0, c2_0 = _shifted_numerator_pair(wn, zeta, period, 0.0)
    base = c1_0 + c2_0
    if abs(base) < 1e-300:
        raise ArithmeticError("unshifted ramp response converges to zero")
    out = rate_limit_degps * (c1 + c2) / base
    return out if np.ndim(m) else float(out)


def ripple_peak(
    wn: float,
    zeta: float,
    period: float,
    rate_limit_degps: float = DEFAULT_RATE_LIMIT_DEGPS,
    grid_step: float = 1e-5,
) -> tuple[float, float]:
    """Worst-case intersample offset and the peak steady rate, deg/s.

    The stationary point of the shifted final value has the closed form

        m* = Re[ (ln(b (1 - e^{-aT})) - ln(a (1 - e^{-bT}))) / ((b - a) T) ]

    with ``a, b`` the negated continuous poles.  The complex expression
    is evaluated directly and accepted only when its imaginary part is
    negligible, it lands inside [0, 1), and it beats its immediate
    neighborhood; otherwise a dense grid search over ``m`` decides.
    """
    _check_degenerate(wn, zeta, period)
    alpha, beta = _decay_params(wn, zeta)
    m_star = None
    if abs(beta - alpha) > 1e-12 * abs(alpha):
        val = (
            np.log(beta * (1.0 - np.exp(-alpha * period)))
            - np.log(alpha * (1.0 - np.exp(-beta * period)))
        ) / ((beta - alpha) * period)
        if abs(val.imag) < 1e-9 and 0.0 <= val.real < 1.0:
            candidate = float(val.real)
            lo = max(candidate - 1e-4, 0.0)
            hi = min(candidate + 1e-4, 1.0 - 1e-12)
            peak_here = steady_state_ripple(wn, zeta, period, candidate, rate_limit_degps)
            if peak_here >= steady_state_ripple(
                wn, zeta, period, lo, rate_limit_degps
            ) and peak_here >= steady_state_ripple(wn, zeta, period, hi, rate_limit_degps):
                m_star = candidate
    if m_star is None:
        grid = np.arange(0.0, 1.0, grid_step)
        values = steady_state_ripple(wn, zeta, period, grid, rate_limit_degps)
        m_star = float(grid[np.argmax(values)])
    peak = float(steady_state_ripple(wn, zeta, period, m_star, rate_limit_degps))
    return m_star, peak


def pole_zero(tf: DiscreteTransferFunction) -> tuple[np.ndarray, np.ndarray]:
    """(zeros, poles) of the transfer function in the z plane."""
    num = np.trim_zeros(tf.num, "f")
    den = np.trim_zeros(tf.den, "f")
    if num.size == 0:
        raise ValueError("zero numerator polynomial has no pole-zero form")
    zeros = np.roots(num) if num.size > 1 else np.array([])
    poles = np.roots(den) if den.size > 1 else np.array([])
    return zeros, poles


@dataclass(frozen=True)
class RippleReport:
    """Summary of one hold-period analysis.

    ``gain_points`` is the (m, dB) normalizing-gain curve; ``zeros`` and
    ``poles`` describe the hold-equivalent system at m = 0.
    """

    period: float
    m_star: float
    peak_degps: float
    rate_limit_degps: float
    gain_points: np.ndarray = field(repr=False)
    zeros: np.ndarray = field(repr=False)
    poles: np.ndarray = field(repr=False)


def ripple_report(
    wn: float,
    zeta: float,
    period: float,
    rate_limit_degps: float = DEFAULT_RATE_LIMIT_DEGPS,
) -> RippleReport:
    """Run the full per-period analysis used by the report command."""
    m_star, peak = ripple_peak(wn, zeta, period, rate_limit_degps)
    zeros, poles = pole_zero(zoh_rate_tf(wn, zeta, period))
    return RippleReport(
        period=period,
        m_star=m_star,
        peak_degps=peak,
        rate_limit_degps=rate_limit_degps,
        gain_points=gain_curve(wn, zeta, period),
        zeros=zeros,
        poles=poles,
    )
