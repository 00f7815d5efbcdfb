"""Figure rendering for simulation logs and ripple analyses.

Uses the Agg backend so runs work headless; every function writes the
figure to the given path and returns that path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .simulate import TrajectoryLog

__all__ = [
    "plot_rates",
    "plot_attitude",
    "plot_gain_curve",
    "plot_pole_zero",
    "plot_rate_overlay",
]


def plot_rates(log: TrajectoryLog, path, title: str = "Body rates") -> str:
    fig, ax = plt.subplots(figsize=(8, 4))
    rates = log.rates_degps()
    for i, label in enumerate(("x", "y", "z")):
        ax.plot(log.times, rates[:, i], label=f"$\\omega_{label}$")
    ax.set_xlabel("time [s]")
    ax.set_ylabel("rate [deg/s]")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return str(path)


def plot_attitude(log: TrajectoryLog, path, title: str = "Attitude tracking") -> str:
    fig, ax = plt.subplots(figsize=(8, 4))
    for i in range(4):
        (line,) = ax.plot(log.times, log.quaternions[:, i], label=f"$q_{i + 1}$")
        ax.plot(
            log.times,
            log.targets[:, i],
            linestyle="--",
            linewidth=0.8,
            color=line.get_color(),
        )
    ax.set_xlabel("time [s]")
    ax.set_ylabel("quaternion component")
    ax.set_title(title + " (dashed = command)")
    ax.grid(True, alpha=0.3)
    ax.legend(ncol=4)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return str(path)


def plot_gain_curve(points: np.ndarray, path, title: str = "Intersample gain") -> str:
    """``points`` is the (m, dB) array from the gain-curve analysis."""
    points = np.asarray(points, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(points[:, 0], points[:, 1])
    ax.set_xlabel("intersample fraction m")
    ax.set_ylabel("steady ramp gain [dB]")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return str(path)


def plot_pole_zero(zeros: np.ndarray, poles: np.ndarray, path, title: str = "Pole-zero map") -> str:
    fig, ax = plt.subplots(figsize=(5, 5))
    theta = np.linspace(0.0, 2.0 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), color="gray", linewidth=0.8)
    zeros = np.atleast_1d(zeros)
    poles = np.atleast_1d(poles)
    ax.scatter(zeros.real, zeros.imag, marker="o", facecolors="none", edgecolors="C0", label="zeros")
    ax.scatter(poles.real, poles.imag, marker="x", color="C3", label="poles")
    ax.axhline(0.0, color="gray", linewidth=0.5)
    ax.axvline(0.0, color="gray", linewidth=0.5)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return str(path)


def plot_rate_overlay(curves: dict, path, title: str = "Rate comparison") -> str:
    """``curves`` maps a label to a (times, rate_degps) pair."""
    fig, ax = plt.subplots(figsize=(8, 4))
    for label, (t, rate) in curves.items():
        ax.plot(t, rate, label=label)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("rate [deg/s]")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return str(path)
