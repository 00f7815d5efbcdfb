"""Command-line front end.

Subcommands:

``simulate``        run a scenario file, write the trajectory CSV (+ SVGs)
``analyze-ripple``  worst-case intersample ripple for one hold period
``table1``          ripple summary over a list of hold periods
``encode``          compress a command profile into CGL filter coefficients
``decode``          evaluate a coefficient file at chosen times
``footprint``       uplink byte counts for held vs compressed commands
``pole-zero``       roots of the fraction-shifted rate transfer function

Exit codes: 0 success, 2 configuration/usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from . import commands as cmd
from . import scenario as scn
from . import zdomain as zd
from .profiles import angle_ramp_deg, reversal_maneuver

__all__ = ["main", "build_parser"]

_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FMT % x


def _write_lines(lines: list[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attsteer",
        description="Attitude-command steering: simulation, ripple analysis, "
        "and trajectory compression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario file")
    p.add_argument("--config", required=True, help="scenario INI file")
    p.add_argument("--out-dir", default=".", help="directory for CSV/SVG outputs")

    p = sub.add_parser("analyze-ripple", help="worst-case ripple for one hold period")
    p.add_argument("--wn", type=float, default=0.24, help="loop natural frequency [rad/s]")
    p.add_argument("--zeta", type=float, default=0.85, help="loop damping ratio")
    p.add_argument("--T", type=float, required=True, dest="period", help="hold period [s]")
    p.add_argument("--rate-limit", type=float, default=0.13, help="slew rate limit [deg/s]")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.add_argument("--plots", action="store_true", help="also write gain-curve and pole-zero SVGs")
    p.add_argument("--plot-dir", default=".", help="directory for the SVGs")

    p = sub.add_parser("table1", help="ripple summary over several hold periods")
    p.add_argument("--wn", type=float, default=0.24)
    p.add_argument("--zeta", type=float, default=0.85)
    p.add_argument(
        "--periods",
        default="10,5,2,1,0.2",
        help="comma-separated hold periods [s]",
    )
    p.add_argument("--rate-limit", type=float, default=0.13)
    p.add_argument("--out", default=None)

    p = sub.add_parser("encode", help="compress a command profile into coefficients")
    p.add_argument("--input", choices=("ramp", "maneuver"), default="ramp")
    p.add_argument("--rate", type=float, default=0.13, help="ramp/maneuver rate [deg/s]")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--tf", type=float, required=True)
    p.add_argument("--N", type=int, required=True, dest="order", help="interpolation order")
    p.add_argument("--out", default=None, help="coefficient file to write")

    p = sub.add_parser("decode", help="evaluate a coefficient file")
    p.add_argument("--coefficients", required=True, help="file written by encode")
    p.add_argument("--step", type=float, default=None, help="evaluate every step seconds")
    p.add_argument("--times", default=None, help="comma-separated times [s]")
    p.add_argument("--out", default=None)

    p = sub.add_parser("footprint", help="uplink byte counts")
    p.add_argument("--held", type=int, default=None, help="number of held waypoints")
    p.add_argument("--order", type=int, default=None, help="coefficient record order")
    p.add_argument("--channels", type=int, default=4, choices=(1, 4))
    p.add_argument("--coefficients", default=None, help="size an existing coefficient file")

    p = sub.add_parser("pole-zero", help="roots of the shifted rate transfer function")
    p.add_argument("--wn", type=float, default=0.24)
    p.add_argument("--zeta", type=float, default=0.85)
    p.add_argument("--T", type=float, required=True, dest="period")
    p.add_argument("--m", type=float, default=0.0, help="intersample fraction in [0, 1)")
    p.add_argument("--plot", default=None, help="write a pole-zero SVG here")
    p.add_argument("--out", default=None)
    return parser


def _run_simulate(args) -> int:
    config = scn.parse_scenario(args.config)
    result = scn.execute(config, out_dir=args.out_dir)
    peak = float(np.max(np.abs(result.log.rates_degps())))
    print(f"csv: {result.csv_path}")
    for path in result.plot_paths:
        print(f"plot: {path}")
    if result.footprint is not None:
        print(f"command footprint: {result.footprint} bytes")
    if result.gain_scale != 1.0:
        print(f"gain-normalized command scale: {_fmt(result.gain_scale)}")
    print(f"peak body rate: {_fmt(peak)} deg/s")
    return 0


def _run_analyze(args) -> int:
    report = zd.ripple_report(
        args.wn, args.zeta, args.period, rate_limit_degps=args.rate_limit
    )
    lines = [
        "T,m_star,omega_peak_degps",
        f"{_fmt(report.period)},{_fmt(report.m_star)},{_fmt(report.peak_degps)}",
    ]
    _write_lines(lines, args.out)
    if args.plots:
        from . import plotting

        import os

        os.makedirs(args.plot_dir, exist_ok=True)
        tag = ("%g" % args.period).replace(".", "p")
        print(
            "plot: "
            + plotting.plot_gain_curve(
                report.gain_points, os.path.join(args.plot_dir, f"gain_T{tag}.svg")
            )
        )
        print(
            "plot: "
            + plotting.plot_pole_zero(
                report.zeros,
                report.poles,
                os.path.join(args.plot_dir, f"polezero_T{tag}.svg"),
            )
        )
    return 0


def _run_table(args) -> int:
    try:
        periods = [float(v) for v in args.periods.split(",") if v.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --periods list {args.periods!r}") from exc
    if not periods:
        raise ValueError("--periods list is empty")
    lines = ["T,m_star,omega_peak_degps"]
    for period in periods:
        m_star, peak = zd.ripple_peak(
            args.wn, args.zeta, period, rate_limit_degps=args.rate_limit
        )
        lines.append(f"{_fmt(period)},{_fmt(m_star)},{_fmt(peak)}")
    _write_lines(lines, args.out)
    return 0


def _run_encode(args) -> int:
    if args.tf <= args.t0:
        raise ValueError("--tf must exceed --t0")
    if args.input == "ramp":
        sampler = angle_ramp_deg(args.rate)
    else:
        profile = reversal_maneuver(per_axis_rate_degps=args.rate)
        sampler = profile.quaternion
    record = cmd.encode_trajectory(sampler, args.t0, args.tf, args.order)
    if args.out is not None:
        cmd.save_coefficients(args.out, record)
        print(f"coefficients: {args.out}")
    n_ch = record.channels.shape[0]
    header = "j,t," + ",".join(f"c{i + 1}" for i in range(n_ch))
    lines = [header]
    times = record.node_times()
    for j in range(record.order + 1):
        vals = ",".join(_fmt(record.channels[i, j]) for i in range(n_ch))
        lines.append(f"{j},{_fmt(times[j])},{vals}")
    _write_lines(lines, None)
    return 0


def _run_decode(args) -> int:
    record = cmd.load_coefficients(args.coefficients)
    if (args.step is None) == (args.times is None):
        raise ValueError("give exactly one of --step or --times")
    if args.step is not None:
        if args.step <= 0.0:
            raise ValueError("--step must be positive")
        n = int(np.floor((record.t_end - record.t_start) / args.step + 1e-9))
        times = record.t_start + args.step * np.arange(n + 1)
    else:
        try:
            times = np.array([float(v) for v in args.times.split(",") if v.strip()])
        except ValueError as exc:
            raise ValueError(f"bad --times list {args.times!r}") from exc
        if times.size == 0:
            raise ValueError("--times list is empty")
    values = cmd.decode_trajectory(record, times)
    n_ch = values.shape[0]
    lines = ["t," + ",".join(f"c{i + 1}" for i in range(n_ch))]
    for k in range(times.size):
        lines.append(_fmt(times[k]) + "," + ",".join(_fmt(values[i, k]) for i in range(n_ch)))
    _write_lines(lines, args.out)
    return 0


def _run_footprint(args) -> int:
    chosen = [v is not None for v in (args.held, args.order, args.coefficients)]
    if sum(chosen) != 1:
        raise ValueError("give exactly one of --held, --order, --coefficients")
    if args.held is not None:
        if args.held < 1:
            raise ValueError("--held must be at least 1")
        table = cmd.WaypointTable(
            times=np.arange(args.held, dtype=float),
            quaternions=np.tile([0.0, 0.0, 0.0, 1.0], (args.held, 1)),
        )
        n = cmd.footprint_bytes(table)
        print(f"held waypoints: {args.held} rows, {n} bytes")
    elif args.order is not None:
        record = cmd.CoefficientRecord(
            order=args.order,
            t_start=0.0,
            t_end=1.0,
            channels=np.zeros((args.channels, args.order + 1)),
        )
        n = cmd.footprint_bytes(record)
        print(
            f"coefficient record: order {args.order}, {args.channels} channel(s), {n} bytes"
        )
    else:
        record = cmd.load_coefficients(args.coefficients)
        n = cmd.footprint_bytes(record)
        print(f"coefficient file {args.coefficients}: {n} bytes")
    return 0


def _run_pole_zero(args) -> int:
    if args.m == 0.0:
        tf = zd.zoh_rate_tf(args.wn, args.zeta, args.period)
    else:
        tf = zd.modified_rate_tf(args.wn, args.zeta, args.period, args.m)
    zeros, poles = zd.pole_zero(tf)
    lines = ["kind,re,im"]
    for root in zeros:
        lines.append(f"zero,{_fmt(root.real)},{_fmt(root.imag)}")
    for root in poles:
        lines.append(f"pole,{_fmt(root.real)},{_fmt(root.imag)}")
    _write_lines(lines, args.out)
    if args.plot is not None:
        from . import plotting

        print("plot: " + plotting.plot_pole_zero(zeros, poles, args.plot))
    return 0


_DISPATCH = {
    "simulate": _run_simulate,
    "analyze-ripple": _run_analyze,
    "table1": _run_table,
    "encode": _run_encode,
    "decode": _run_decode,
    "footprint": _run_footprint,
    "pole-zero": _run_pole_zero,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (scn.ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
