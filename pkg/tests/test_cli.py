import math
import subprocess
import sys
import types

import pytest

from centralqfi import sweep
from centralqfi.cli import UsageError, main, parse_grid, parse_number

SMALL = ["--grid", "theta1=0:pi:3,t=0:2:5"]


def test_parse_number():
    assert parse_number("pi/8") == pytest.approx(math.pi / 8)
    assert parse_number("3*π/4") == pytest.approx(3 * math.pi / 4)
    assert parse_number("-1e-3") == -1e-3
    assert parse_number("2**3") == 8
    for bad in ("", "x", "__import__('os')", "1/0", "nan", "True", "9**9**9"):
        with pytest.raises(UsageError):
            parse_number(bad)


def test_parse_grid():
    assert parse_grid("theta1=0:pi:3,t=0:0:1") == {"theta1": (0.0, math.pi, 3), "t": (0.0, 0.0, 1)}
    for bad in ("theta1=0:pi", "theta1", "t=0:1:2.5"):
        with pytest.raises(UsageError):
            parse_grid(bad)


def test_sweep_to_stdout(capsys):
    assert main(["sweep", "--preset", "fig1a", "--grid", "theta1=0:pi:3,t=0:0:1"]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = [l for l in out if not l.startswith("#")]
    assert rows[0].startswith("eta_name,")
    assert len(rows) == 4
    assert all(float(r.split(",")[6]) == pytest.approx(4) for r in rows[1:])


def test_sweep_to_file_with_plot(tmp_path, capsys):
    out = tmp_path / "run.csv"
    code = main(["sweep", "--preset", "fig5ab", *SMALL, "--set", "g=0.2", "--out", str(out), "--emit-plot-script", "--spot-check", "5"])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert "# g=0.2" in out.read_text().splitlines()
    assert (tmp_path / "run_plot.py").exists()


def test_sweep_options(capsys):
    args = ["sweep", "--eta", "phi1", "--derivative", "fd", "--fd-step", "1e-3", "--bath-n", "3", *SMALL]
    assert main(args) == 0
    text = capsys.readouterr().out
    assert "# eta=phi1" in text and "# bath_n=3" in text and "# fd_step=0.001" in text


@pytest.mark.parametrize(
    "args",
    [
        ["sweep", "--grid", "theta1=1:0:5"],
        ["sweep", "--grid", "theta1=0:1"],
        ["sweep", "--set", "omega2=1"],
        ["sweep", "--set", "g"],
        ["sweep", "--preset", "nope"],
        ["sweep", "--derivative", "fd", "--fd-step", "0"],
        ["sweep", "--bath-n", "0"],
        ["sweep", "--emit-plot-script"],
        ["sweep", "--eta", "omega"],
        ["bogus"],
        [],
        ["verify", "--only", "x"],
        ["peaks", "--in", "x.csv"],
    ],
)
def test_usage_errors(args, capsys):
    assert main(args) == 2
    assert capsys.readouterr().err


def test_io_errors(tmp_path, capsys):
    assert main(["sweep", *SMALL, "--out", str(tmp_path / "no" / "dir.csv")]) == 3
    assert main(["peaks", "--in", str(tmp_path / "missing.csv"), "--at", "theta1=0"]) == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("# only a header\n")
    assert main(["peaks", "--in", str(bad), "--at", "theta1=0"]) == 3


def test_invariant_violation_exit(monkeypatch, capsys):
    real = sweep.kernels

    def inflated(*args):
        s, ds = real.mixture_sweep(*args)
        return 1.5 * s, ds

    monkeypatch.setattr(sweep, "kernels", types.SimpleNamespace(mixture_sweep=inflated))
    assert main(["sweep", *SMALL]) == 4
    assert "invariant violation" in capsys.readouterr().err


def test_peaks_command(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert main(["sweep", "--preset", "fig5ab", "--grid", "theta1=0:pi:5,t=0:15:301", "--out", str(out)]) == 0
    assert main(["peaks", "--in", str(out), "--at", "theta1=pi/4"]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("theta1=0.785398") and "points=301" in line and "peaks=" in line
    assert main(["peaks", "--in", str(out), "--at", "omega=1"]) == 2


def test_presets_command(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "fig1a" in out and "fig10cd" in out and "bath_n=7" in out


def test_verify_subset(capsys):
    assert main(["verify", "--only", "3,9"]) == 0
    out = capsys.readouterr().out
    assert "PASS [ 3]" in out and "PASS [ 9]" in out and "2/2 passed" in out


def test_verify_failure_exit(monkeypatch, capsys):
    from centralqfi import verify

    monkeypatch.setattr(verify, "CHECKS", [(99, "stub", lambda: (False, "forced"), None)])
    assert main(["verify", "--only", "99"]) == 4
    assert "FAIL [99] stub: forced" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "centralqfi", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("centralqfi 0.1.0")
