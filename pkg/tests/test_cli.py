import subprocess
import sys

import pytest

from dualheat.cli import run_cli
from dualheat.scenario import default_scenario_path

WORKSHEET_DESIGN_ARGS = [
    "design", "--vs", "12", "--ripple", "0.07", "--iload", "0.2", "--f", "50", "--vled", "2.7",
    "--iled", "3.2m", "--r1", "68k", "--r2", "68k", "--c2", "1u", "--r3", "8.2k", "--c3", "47u",
]


def test_design_table(capsys):
    assert run_cli(WORKSHEET_DESIGN_ARGS) == 0
    out = capsys.readouterr().out
    for needle in ["16.97", "1.1879", "1683.58", "2200 uF", "718.75", "0.0952", "0.26978", "0.36498", "0.3652",
                   "2.7398", "2.74 Hz", "7.07203"]:
        assert needle in out, needle


def test_simulate_default(tmp_path, capsys):
    out_path = tmp_path / "trace.csv"
    assert run_cli(["simulate", "default", "--out", str(out_path)]) == 0
    header = out_path.read_text().splitlines()[0]
    assert header.startswith("time_s,v_rail,v_reg,v_sensor1")
    assert "alarm intervals: 1" in capsys.readouterr().out


def test_simulate_by_path(tmp_path):
    out_path = tmp_path / "trace.csv"
    assert run_cli(["simulate", str(default_scenario_path()), "--out", str(out_path)]) == 0
    assert out_path.exists()


def test_simulate_bad_profile_reports_line(tmp_path, capsys):
    scn = tmp_path / "bad.scn"
    scn.write_text("[profile.1]\n0 25\n5 30\n2 31\n[profile.2]\n0 1\n[run]\nformat = 1\n")
    assert run_cli(["simulate", str(scn), "--out", str(tmp_path / "t.csv")]) != 0
    assert "line 4" in capsys.readouterr().err


def test_simulate_missing_file(tmp_path, capsys):
    assert run_cli(["simulate", str(tmp_path / "nope.scn"), "--out", str(tmp_path / "t.csv")]) != 0
    assert "nope.scn" in capsys.readouterr().err


def test_sweep(capsys):
    assert run_cli(["sweep", "default", "--presets", "26,30,34"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 4
    times = [float(line.split()[1]) for line in out[1:]]
    assert times == sorted(times) and len(set(times)) == 3


def test_selftest(capsys):
    assert run_cli(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 10


@pytest.mark.parametrize("argv", [[], ["bogus"], ["design", "--nope", "1"], ["sweep", "default"], ["design", "--r1", "1x"]])
def test_usage_errors(argv, capsys):
    assert run_cli(argv) != 0
    assert "usage" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "dualheat", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "all checks passed" in proc.stdout
