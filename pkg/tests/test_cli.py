import subprocess

import numpy as np
import pytest

from attsteer.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_outputs_all_periods(capsys):
    code, out, _ = run_cli(capsys, "table1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "T,m_star,omega_peak_degps"
    assert len(lines) == 6
    rows = {float(r.split(",")[0]): r.split(",") for r in lines[1:]}
    np.testing.assert_allclose(float(rows[10.0][1]), 0.337, atol=1e-3)
    np.testing.assert_allclose(float(rows[10.0][2]), 0.2689, atol=1e-3)


def test_analyze_ripple_single_period(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, out, _ = run_cli(capsys, "analyze-ripple", "--T", "10", "--out", str(out_file))
    assert code == 0
    header, row = out_file.read_text().strip().splitlines()
    assert header == "T,m_star,omega_peak_degps"
    values = [float(v) for v in row.split(",")]
    np.testing.assert_allclose(values, [10.0, 0.33734, 0.26891], atol=1e-4)


def test_analyze_ripple_plots(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "analyze-ripple",
        "--T",
        "10",
        "--plots",
        "--plot-dir",
        str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "gain_T10.svg").exists()
    assert (tmp_path / "polezero_T10.svg").exists()


def test_encode_decode_round_trip(capsys, tmp_path):
    coef = tmp_path / "c.txt"
    code, out, _ = run_cli(
        capsys,
        "encode",
        "--input",
        "ramp",
        "--rate",
        "0.13",
        "--t0",
        "0",
        "--tf",
        "60",
        "--N",
        "5",
        "--out",
        str(coef),
    )
    assert code == 0
    assert coef.exists()
    code, out, _ = run_cli(
        capsys, "decode", "--coefficients", str(coef), "--times", "0,30,60"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    np.testing.assert_allclose(
        [float(r[1]) for r in rows], [0.0, 3.9, 7.8], atol=1e-12
    )


def test_decode_step_grid(capsys, tmp_path):
    coef = tmp_path / "c.txt"
    run_cli(capsys, "encode", "--input", "ramp", "--tf", "10", "--N", "3", "--out", str(coef))
    code, out, _ = run_cli(capsys, "decode", "--coefficients", str(coef), "--step", "2.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6  # header + t = 0, 2.5, 5, 7.5, 10


def test_footprint_outputs(capsys):
    code, out, _ = run_cli(capsys, "footprint", "--held", "3540")
    assert code == 0 and "70800 bytes" in out
    code, out, _ = run_cli(capsys, "footprint", "--held", "71")
    assert code == 0 and "1420 bytes" in out
    code, out, _ = run_cli(capsys, "footprint", "--order", "49", "--channels", "4")
    assert code == 0 and "808 bytes" in out


def test_pole_zero_lists_roots(capsys):
    code, out, _ = run_cli(capsys, "pole-zero", "--T", "10", "--m", "0.4")
    assert code == 0
    lines = out.strip().splitlines()
    kinds = [line.split(",")[0] for line in lines[1:]]
    assert kinds.count("zero") == 2
    assert kinds.count("pole") == 2


def test_simulate_scenario(capsys, tmp_path):
    scn = tmp_path / "s.ini"
    scn.write_text(
        "[scenario]\nmode = hold\nduration = 10\ndt = 0.05\n"
        "[command]\nperiod = 5\n"
        "[output]\ncsv = t.csv\n"
    )
    code, out, _ = run_cli(
        capsys, "simulate", "--config", str(scn), "--out-dir", str(tmp_path)
    )
    assert code == 0
    assert "csv:" in out and (tmp_path / "t.csv").exists()
    header = (tmp_path / "t.csv").read_text().splitlines()[0]
    assert header.startswith("t,q1,q2,q3,q4,")


def test_config_errors_exit_two(capsys, tmp_path):
    code, _, err = run_cli(capsys, "simulate", "--config", str(tmp_path / "nope.ini"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.ini"
    bad.write_text("[scenario]\nmode = nonsense\n")
    code, _, err = run_cli(capsys, "simulate", "--config", str(bad))
    assert code == 2
    code, _, err = run_cli(capsys, "decode", "--coefficients", "/does/not/exist")
    assert code == 2
    code, _, err = run_cli(capsys, "footprint")
    assert code == 2
    code, _, err = run_cli(capsys, "encode", "--tf", "0", "--N", "3")
    assert code == 2


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["analyze-ripple"])  # --T is required
    assert exc.value.code == 2


def test_numeric_failure_exits_three(capsys):
    # a hold period landing on the oscillation zeros has no usable model
    wd = 0.24 * np.sqrt(1.0 - 0.85 * 0.85)
    bad_period = "%.17g" % (np.pi / wd)
    code, _, err = run_cli(capsys, "analyze-ripple", "--T", bad_period)
    assert code == 3
    assert "numeric failure" in err


def test_console_script_installed():
    proc = subprocess.run(
        ["attsteer", "table1", "--periods", "10"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("T,m_star")
