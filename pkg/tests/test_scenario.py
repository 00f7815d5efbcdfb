import numpy as np
import pytest

from attsteer.scenario import ConfigError, ScenarioConfig, execute, parse_scenario

MINIMAL = """\
[scenario]
mode = continuous
duration = 10
"""

FULL = """\
[scenario]
mode = hold
duration = 30
dt = 0.05
control_period = 0.2
limiter = false

[maneuver]
axis = 0,0,1
rate_degps = 0.2
ramp_up = 5
cruise_fwd = 10
reversal = 5
cruise_back = 5
ramp_down = 5

[command]
period = 5
gain_normalize = true

[output]
csv = out.csv
plots = false
"""


def write(tmp_path, text, name="scn.ini"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_defaults_from_minimal_file(tmp_path):
    config = parse_scenario(write(tmp_path, MINIMAL))
    assert config.mode == "continuous"
    assert config.duration == 10.0
    assert config.dt == 0.02
    assert config.hold_period == 10.0
    assert config.gain_normalize is True
    assert config.filter_order == 50
    assert config.limiter is False


def test_full_file_parses(tmp_path):
    config = parse_scenario(write(tmp_path, FULL))
    assert config.mode == "hold"
    assert config.axis == (0.0, 0.0, 1.0)
    assert config.rate_degps == 0.2
    assert config.hold_period == 5.0
    assert config.csv_name == "out.csv"


def test_parse_errors(tmp_path):
    with pytest.raises(ConfigError):
        parse_scenario(tmp_path / "missing.ini")
    with pytest.raises(ConfigError):
        parse_scenario(write(tmp_path, "[scenario]\nmode = teleport\n"))
    with pytest.raises(ConfigError):
        parse_scenario(write(tmp_path, "[scenario]\nduration = soon\n"))
    with pytest.raises(ConfigError):
        parse_scenario(write(tmp_path, "[mystery]\nx = 1\n"))
    with pytest.raises(ConfigError):
        parse_scenario(write(tmp_path, "[maneuver]\naxis = 1,2\n"))
    with pytest.raises(ConfigError):
        parse_scenario(write(tmp_path, "[maneuver]\naxis = 0,0,0\n"))


def test_config_invariants():
    with pytest.raises(ConfigError):
        ScenarioConfig(duration=-1.0)
    with pytest.raises(ConfigError):
        ScenarioConfig(filter_order=0)


def test_execute_hold_writes_csv_and_scales(tmp_path):
    config = ScenarioConfig(
        mode="hold", duration=30.0, dt=0.05, hold_period=5.0, csv_name="run.csv"
    )
    result = execute(config, out_dir=tmp_path)
    assert (tmp_path / "run.csv").exists()
    assert result.gain_scale > 1.0
    assert result.footprint == 20 * 7  # waypoints at 0,5,...,30
    lines = (tmp_path / "run.csv").read_text().splitlines()
    assert len(lines) == 1 + int(30.0 / 0.05) + 1


def test_execute_filter_reports_footprint(tmp_path):
    config = ScenarioConfig(
        mode="filter", duration=20.0, dt=0.05, filter_order=10, csv_name="f.csv"
    )
    result = execute(config, out_dir=tmp_path)
    assert result.footprint == 4 * 4 * 11 + 8
    assert result.gain_scale == 1.0


def test_execute_continuous_has_no_footprint(tmp_path):
    config = ScenarioConfig(mode="continuous", duration=10.0, dt=0.05)
    result = execute(config, out_dir=tmp_path)
    assert result.footprint is None
    assert np.all(np.isfinite(result.log.rates))


def test_execute_plots(tmp_path):
    config = ScenarioConfig(mode="continuous", duration=5.0, dt=0.05, plots=True)
    result = execute(config, out_dir=tmp_path)
    assert len(result.plot_paths) == 2
    for path in result.plot_paths:
        assert path.endswith(".svg")
        with open(path, "rb") as fh:
            assert b"<svg" in fh.read(2048)
