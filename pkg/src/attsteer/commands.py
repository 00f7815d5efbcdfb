"""Attitude command sources and trajectory compression.

Three ways to feed the attitude loop a target quaternion:

* hold the most recent waypoint of a stored table (full rate or
  downsampled), the storage-hungry baseline;
* evaluate an interpolating filter whose coefficients are the trajectory
  samples on the Chebyshev-Gauss-Lobatto (CGL) grid, the compressed
  replacement;
* the conventional truncated Chebyshev series fit on the Gauss (roots)
  grid, kept for comparison only, since truncation does not reproduce
  the samples and its grid excludes the interval endpoints.

The CGL grid over [-1, 1] is ``tau_j = -cos(pi j / N)``, j = 0..N
(ascending, endpoints included).  A trajectory spanning [t0, tf] is
encoded by sampling each command channel at the mapped node times and
decoded by evaluating the interpolating polynomial, in barycentric form
for numerical robustness.  Interpolation reproduces the stored samples
exactly, so a decoded command stream is indistinguishable from dense
sampling whenever the trajectory is smooth enough for the chosen order.
Quaternion trajectories use four independent scalar channels plus
renormalization at evaluation time.

Storage accounting matches uplink framing: a held waypoint costs 20
bytes (4-byte time tag + four 4-byte components), a filter record costs
4 bytes per coefficient per channel + 8 bytes for the interval.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import quaternion as quat

__all__ = [
    "cgl_nodes",
    "chebyshev_T",
    "chebyshev_T_derivative",
    "lagrange_basis",
    "barycentric_weights",
    "barycentric_eval",
    "CoefficientRecord",
    "encode_trajectory",
    "decode_trajectory",
    "gauss_chebyshev_coeffs",
    "chebyshev_series_eval",
    "WaypointTable",
    "HeldWaypointSource",
    "FilterCommandSource",
    "footprint_bytes",
    "save_waypoints",
    "load_waypoints",
    "save_coefficients",
    "load_coefficients",
]

NODE_HIT_TOL = 1e-14


def cgl_nodes(order: int) -> np.ndarray:
    """Ascending CGL nodes ``-cos(pi j / order)``, j = 0..order."""
    if order < 1:
        raise ValueError("interpolation order must be at least 1")
    return -np.cos(np.pi * np.arange(order + 1) / order)


def chebyshev_T(n: int, x):
    """Chebyshev polynomial of the first kind by the three-term recurrence."""
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    x = np.asarray(x, dtype=float)
    t_prev = np.ones_like(x)
    if n == 0:
        return t_prev if t_prev.ndim else float(t_prev)
    t_cur = x.copy()
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return t_cur if t_cur.ndim else float(t_cur)


def chebyshev_T_derivative(n: int, x):
    """Derivative of T_n via the second-kind recurrence, ``n U_{n-1}``."""
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    x = np.asarray(x, dtype=float)
    if n == 0:
        z = np.zeros_like(x)
        return z if z.ndim else 0.0
    u_prev = np.ones_like(x)  # U_0
    if n == 1:
        return u_prev if u_prev.ndim else 1.0
    u_cur = 2.0 * x
    for _ in range(n - 2):
        u_prev, u_cur = u_cur, 2.0 * x * u_cur - u_prev
    out = n * u_cur
    return out if out.ndim else float(out)


def lagrange_basis(j: int, order: int, tau) -> np.ndarray | float:
    """Cardinal polynomial for node j of the CGL grid.

    Closed form from the grid's defining polynomial::

        phi_j(tau) = (-1)^(order+j+1) / (order^2 a_j)
                     * (1 - tau^2) dT_order/dtau / (tau - tau_j)

    with ``a_j = 2`` at the endpoints and 1 inside.  (With ascending
    nodes the parity factor differs from the descending-grid convention
    by ``(-1)^order``; the Kronecker property fixes the sign.)  Node
    hits return the exact 0/1 limit.
    """
    if order < 1:
        raise ValueError("interpolation order must be at least 1")
    if not 0 <= j <= order:
        raise ValueError("node index out of range")
    nodes = cgl_nodes(order)
    tau = np.asarray(tau, dtype=float)
    scalar = tau.ndim == 0
    tau = np.atleast_1d(tau)
    a_j = 2.0 if j in (0, order) else 1.0
    sign = -1.0 if (order + j + 1) % 2 else 1.0
    out = np.empty_like(tau)
    delta = tau - nodes[j]
    hit = np.abs(delta) < NODE_HIT_TOL
    safe = ~hit
    out[hit] = 1.0
    if np.any(safe):
        ts = tau[safe]
        out[safe] = (
            sign
            / (order * order * a_j)
            * (1.0 - ts * ts)
            * chebyshev_T_derivative(order, ts)
            / delta[safe]
        )
    # other nodes are exact zeros of the numerator; snap them
    for i, node in enumerate(nodes):
        if i != j:
            out[np.abs(tau - node) < NODE_HIT_TOL] = 0.0
    return out if not scalar else float(out[0])


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """Inverse cross-differences ``w_j = 1 / prod_{i != j} (x_j - x_i)``.

    Any common rescaling of the weights leaves the interpolant
    unchanged, so only ratios matter.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if n < 2:
        raise ValueError("need at least two nodes")
    diffs = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diffs, 1.0)
    if np.any(np.abs(diffs) < 1e-15):
        raise ValueError("nodes must be distinct")
    return 1.0 / diffs.prod(axis=1)


def barycentric_eval(nodes, weights, values, tau):
    """Evaluate the interpolant of (nodes, values) at ``tau``.

    Second barycentric form; an evaluation point within ``1e-14`` of a
    node short-circuits to the stored sample.  Broadcasts over ``tau``.
    """
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    values = np.asarray(values, dtype=float)
    if not nodes.size == weights.size == values.size:
        raise ValueError("nodes, weights, values must have matching sizes")
    tau = np.asarray(tau, dtype=float)
    scalar = tau.ndim == 0
    tau = np.atleast_1d(tau)
    diff = tau[:, None] - nodes[None, :]
    hit = np.abs(diff) < NODE_HIT_TOL
    any_hit = hit.any(axis=1)
    diff_safe = np.where(hit, 1.0, diff)
    terms = weights / diff_safe
    out = (terms @ values) / terms.sum(axis=1)
    if np.any(any_hit):
        idx = np.argmax(hit, axis=1)
        out[any_hit] = values[idx[any_hit]]
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class CoefficientRecord:
    """Compressed command trajectory: channel samples on the CGL grid.

    ``channels`` has shape (n_channels, order + 1); 4 channels for a
    quaternion command, 1 for a scalar angle.  The samples ARE the
    filter coefficients: the interpolating filter is a weighted sum of
    cardinal polynomials with these weights.
    """

    order: int
    t_start: float
    t_end: float
    channels: np.ndarray

    def __post_init__(self) -> None:
        channels = np.atleast_2d(np.asarray(self.channels, dtype=float))
        if self.order < 1:
            raise ValueError("interpolation order must be at least 1")
        if self.t_end <= self.t_start:
            raise ValueError("time interval must have positive length")
        if channels.shape[1] != self.order + 1:
            raise ValueError("need order + 1 coefficients per channel")
        if channels.shape[0] not in (1, 4):
            raise ValueError("record holds 1 (scalar) or 4 (quaternion) channels")
        object.__setattr__(self, "channels", channels)

    def node_times(self) -> np.ndarray:
        tau = cgl_nodes(self.order)
        return self.t_start + (self.t_end - self.t_start) * (tau + 1.0) / 2.0


def encode_trajectory(
    sampler, t_start: float, t_end: float, order: int
) -> CoefficientRecord:
    """Sample ``sampler(t)`` at the mapped CGL node times.

    ``sampler`` returns a scalar or a length-4 vector; the result's
    channels are whatever it produced.
    """
    if t_end <= t_start:
        raise ValueError("time interval must have positive length")
    tau = cgl_nodes(order)
    times = t_start + (t_end - t_start) * (tau + 1.0) / 2.0
    samples = np.array([np.atleast_1d(np.asarray(sampler(t), dtype=float)) for t in times])
    return CoefficientRecord(
        order=order, t_start=t_start, t_end=t_end, channels=samples.T
    )


def decode_trajectory(record: CoefficientRecord, times) -> np.ndarray:
    """Evaluate every channel at ``times``; shape (n_channels, n_times).

    Times are clamped to the record's interval, so the command holds at
    the boundary values outside it.  No renormalization here; quaternion
    users renormalize per evaluation (see :class:`FilterCommandSource`).
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    tau = 2.0 * (times - record.t_start) / (record.t_end - record.t_start) - 1.0
    tau = np.clip(tau, -1.0, 1.0)
    nodes = cgl_nodes(record.order)
    weights = barycentric_weights(nodes)
    return np.vstack(
        [barycentric_eval(nodes, weights, ch, tau) for ch in record.channels]
    )


def gauss_chebyshev_coeffs(f, order: int) -> np.ndarray:
    """Truncated-series coefficients on the Gauss (roots) grid.

    ``c_j = (2 / order) sum_k f(x_k) T_j(x_k)`` over the ``order`` roots
    ``x_k = cos(pi (k - 1/2) / order)``, k = 1..order, returning
    ``c_0..c_order``.  Note ``c_order`` vanishes identically on this
    grid, and reconstruction uses the halved-``c_0`` series convention
    (:func:`chebyshev_series_eval`).  A constant signal gives c_0 = 2.
    """
    if order < 1:
        raise ValueError("filter order must be at least 1")
    roots = np.cos(np.pi * (np.arange(1, order + 1) - 0.5) / order)
    samples = np.array([float(f(x)) for x in roots])
    return np.array(
        [2.0 / order * (samples * chebyshev_T(j, roots)).sum() for j in range(order + 1)]
    )


def chebyshev_series_eval(coeffs: np.ndarray, tau):
    """Evaluate ``c_0/2 + sum_j c_j T_j(tau)`` (truncated series)."""
    coeffs = np.asarray(coeffs, dtype=float)
    tau = np.asarray(tau, dtype=float)
    out = 0.5 * coeffs[0] * np.ones_like(tau)
    for j in range(1, coeffs.size):
        out = out + coeffs[j] * chebyshev_T(j, tau)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class WaypointTable:
    """Time-tagged target quaternions, strictly increasing times."""

    times: np.ndarray
    quaternions: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        quats = np.asarray(self.quaternions, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("waypoint table must contain at least one row")
        if quats.shape != (times.size, 4):
            raise ValueError("quaternions must be an (n, 4) array")
        if times.size > 1 and np.any(np.diff(times) <= 0.0):
            raise ValueError("waypoint times must be strictly increasing")
        norms = np.linalg.norm(quats, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-3):
            raise ValueError("waypoint quaternions must be unit length")
        # renormalize only rows that need it, so save/load round-trips
        # are bit exact for already-unit rows
        off = np.abs(norms - 1.0) > 1e-12
        if np.any(off):
            quats = quats.copy()
            quats[off] /= norms[off, None]
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "quaternions", quats)

    def __len__(self) -> int:
        return self.times.size


class HeldWaypointSource:
    """Command = most recent waypoint at or before t (clamped at the ends)."""

    def __init__(self, table: WaypointTable):
        self.table = table

    def target(self, t: float) -> np.ndarray:
        idx = int(np.searchsorted(self.table.times, t, side="right")) - 1
        idx = min(max(idx, 0), len(self.table) - 1)
        return self.table.quaternions[idx]


class FilterCommandSource:
    """Command = renormalized filter evaluation of a 4-channel record."""

    def __init__(self, record: CoefficientRecord):
        if record.channels.shape[0] != 4:
            raise ValueError("quaternion commanding needs a 4-channel record")
        self.record = record
        self._nodes = cgl_nodes(record.order)
        self._weights = barycentric_weights(self._nodes)

    def raw(self, t: float) -> np.ndarray:
        """Interpolated quaternion before renormalization."""
        tau = (
            2.0 * (t - self.record.t_start) / (self.record.t_end - self.record.t_start)
            - 1.0
        )
        tau = min(max(tau, -1.0), 1.0)
        return np.array(
            [
                barycentric_eval(self._nodes, self._weights, ch, tau)
                for ch in self.record.channels
            ]
        )

    def target(self, t: float) -> np.ndarray:
        return quat.normalize(self.raw(t))


def footprint_bytes(source) -> int:
    """Uplink storage for a command source's data.

    WaypointTable: 20 bytes per row.  CoefficientRecord: 4 bytes per
    coefficient per channel + 8 bytes for the interval.
    """
    if isinstance(source, WaypointTable):
        return 20 * len(source)
    if isinstance(source, CoefficientRecord):
        n_ch, n_coef = source.channels.shape
        return 4 * n_ch * n_coef + 8
    if isinstance(source, (HeldWaypointSource,)):
        return footprint_bytes(source.table)
    if isinstance(source, FilterCommandSource):
        return footprint_bytes(source.record)
    raise TypeError(f"no footprint rule for {type(source).__name__}")


def _format(x: float) -> str:
    return f"{x:.17g}"


def save_waypoints(path: str | os.PathLike, table: WaypointTable) -> None:
    """Write ``# waypoints v1`` text: one ``t,q1,q2,q3,q4`` row per line."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# waypoints v1\n")
        for t, q in zip(table.times, table.quaternions):
            fh.write(",".join(_format(v) for v in (t, *q)) + "\n")


def load_waypoints(path: str | os.PathLike) -> WaypointTable:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != "# waypoints v1":
        raise ValueError(f"{path}: missing '# waypoints v1' header")
    times = []
    quats = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected t,q1,q2,q3,q4")
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        times.append(values[0])
        quats.append(values[1:])
    if not times:
        raise ValueError(f"{path}: no waypoint rows")
    return WaypointTable(times=np.array(times), quaternions=np.array(quats))


def save_coefficients(path: str | os.PathLike, record: CoefficientRecord) -> None:
    """Write ``# cglcoef v1`` text, one line of channel values per node.

    Header carries ``N`` (order), ``t0``, ``tf``; a ``channels=`` token
    is appended for scalar records (absent means the 4-channel
    quaternion layout).
    """
    n_ch = record.channels.shape[0]
    header = (
        f"# cglcoef v1 N={record.order} "
        f"t0={_format(record.t_start)} tf={_format(record.t_end)}"
    )
    if n_ch != 4:
        header += f" channels={n_ch}"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        for row in record.channels.T:
            fh.write(",".join(_format(v) for v in row) + "\n")


def load_coefficients(path: str | os.PathLike) -> CoefficientRecord:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# cglcoef v1"):
        raise ValueError(f"{path}: missing '# cglcoef v1' header")
    fields = {}
    for token in lines[0].split()[3:]:
        key, _, value = token.partition("=")
        if not value:
            raise ValueError(f"{path}: malformed header token {token!r}")
        fields[key] = value
    try:
        order = int(fields["N"])
        t_start = float(fields["t0"])
        t_end = float(fields["tf"])
        n_ch = int(fields.get("channels", "4"))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: bad header: {exc}") from None
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != n_ch:
            raise ValueError(f"{path}:{lineno}: expected {n_ch} values")
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    if len(rows) != order + 1:
        raise ValueError(
            f"{path}: expected {order + 1} coefficient rows, found {len(rows)}"
        )
    return CoefficientRecord(
        order=order, t_start=t_start, t_end=t_end, channels=np.array(rows).T
    )
