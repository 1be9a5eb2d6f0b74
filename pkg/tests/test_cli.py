import math
import pathlib

import numpy as np

from calckit.cli import main
from calckit.signals import read_csv

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- integrate

def test_integrate_simpson_value(capsys):
    code, out, _ = run(capsys, "integrate", "--expr", "x^2", "--a", "0", "--b", "1",
                       "--n", "1000", "--method", "simpson")
    assert code == 0
    assert "value: 0.333333333333" in out


def test_integrate_trapezoid_constant(capsys):
    code, out, _ = run(capsys, "integrate", "--expr", "1", "--a", "0", "--b", "2",
                       "--method", "trapezoid", "--n", "1")
    assert code == 0
    assert "value: 2" in out


def test_integrate_darboux_prints_bounds(capsys):
    code, out, _ = run(capsys, "integrate", "--expr", "x", "--a", "0", "--b", "1",
                       "--n", "4", "--method", "darboux", "--subsamples", "2")
    assert code == 0
    assert "lower: 0.375" in out
    assert "upper: 0.625" in out


def test_integrate_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "integrate", "--expr", "x@", "--a", "0", "--b", "1")
    assert code == 2
    assert "offset" in err


def test_integrate_domain_error_exit_2(capsys):
    code, _, err = run(capsys, "integrate", "--expr", "1/x", "--a", "0", "--b", "1",
                       "--method", "riemann-left")
    assert code == 2
    assert "error" in err


# ---------------------------------------------------------------- projects

def test_project1_writes_reingestable_csv(tmp_path, capsys):
    out_csv = tmp_path / "odo.csv"
    code, out, _ = run(capsys, "project1", "--imu", str(DATA / "imu_fixture.csv"),
                       "--out", str(out_csv))
    assert code == 0
    assert "final position:" in out
    sig = read_csv(out_csv)           # shared CSV contract round-trips
    assert sig.dim == 2               # vx and px for the 1-axis trace


def test_project1_malformed_csv_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,ax\n0.0,1.0\nnot,a,number\n")
    code, _, err = run(capsys, "project1", "--imu", str(bad),
                       "--out", str(tmp_path / "o.csv"))
    assert code == 2
    assert "line 3" in err


def test_optimize_gymnast_runs(capsys):
    code, out, _ = run(capsys, "optimize", "--scenario", "gymnast",
                       "--config", str(DATA / "gymnast.json"))
    assert code == 0
    assert "converged: True" in out


def test_optimize_diver_runs(capsys):
    code, out, _ = run(capsys, "optimize", "--scenario", "diver",
                       "--config", str(DATA / "diver.json"))
    assert code == 0
    assert "constraint residual:" in out


def test_optimize_budget_exhaustion_exit_3(tmp_path, capsys):
    import json

    cfg = tmp_path / "gym.json"
    cfg.write_text(json.dumps({"half_length": 0.5, "m1": 5.0, "m2": 5.0,
                               "p0": [0.0, 3.0], "p_land": [1.0, 0.0],
                               "theta_land": math.pi}))
    code, out, _ = run(capsys, "optimize", "--scenario", "gymnast",
                       "--config", str(cfg), "--max-iters", "3")
    assert code == 3
    assert "constraint residual:" in out   # residuals still reported


def test_simulate_config_overrides_model_parameters(tmp_path, capsys):
    import json

    cfg = tmp_path / "pend.json"
    cfg.write_text(json.dumps({"length": 2.0, "mass": 0.5}))
    out_csv = tmp_path / "states.csv"
    code, out, _ = run(capsys, "simulate", "--model", "pendulum",
                       "--config", str(cfg), "--q0", "0.01",
                       "--T", "6", "--dt", "0.001", "--out", str(out_csv))
    assert code == 0
    # period scales with sqrt(length): doubled length vs the default model
    sig = read_csv(out_csv)
    th = sig.channel(0)
    crossings = [sig.t[k - 1] + th[k - 1] / (th[k - 1] - th[k]) * (sig.t[k] - sig.t[k - 1])
                 for k in range(1, len(th)) if th[k - 1] > 0.0 >= th[k]]
    period = crossings[1] - crossings[0]
    assert abs(period - 2.0 * math.pi * math.sqrt(2.0 / 9.81)) < 0.01


def test_simulate_uncontrolled_energy_drift(tmp_path, capsys):
    out_csv = tmp_path / "pend.csv"
    code, out, _ = run(capsys, "simulate", "--model", "pendulum", "--q0", "1.0",
                       "--T", "2", "--dt", "0.001", "--out", str(out_csv))
    assert code == 0
    drift = float(out.splitlines()[-1].split(":")[1])
    assert drift < 1e-6
    sig = read_csv(out_csv)
    assert sig.dim == 2


def test_control_step_first_order(capsys):
    code, out, _ = run(capsys, "control", "step", "--num", "1", "--den", "1", "1",
                       "--T", "5", "--dt", "0.001")
    assert code == 0
    steady = float(next(l for l in out.splitlines()
                        if l.startswith("steady state:")).split(":")[1])
    assert abs(steady - 1.0) <= 1e-3


def test_control_pd_segway_stable_poles(capsys):
    code, out, _ = run(capsys, "control", "pd", "--model", "segway",
                       "--wn", "3", "--zeta", "0.9", "--T", "5")
    assert code == 0
    lines = out.splitlines()
    start = lines.index("closed-loop poles:") + 2   # skip the header row
    reals = []
    for line in lines[start:]:
        parts = line.split()
        if len(parts) != 2:
            break
        try:
            reals.append(float(parts[0]))
        except ValueError:
            break
    assert reals and all(r < 0.0 for r in reals)


def test_control_linearize_prints_tf(capsys):
    code, out, _ = run(capsys, "control", "linearize", "--model", "pendulum")
    assert code == 0
    assert "lean transfer function:" in out


def test_unknown_subcommand_exit_2(capsys):
    code, _, _ = run(capsys, "frobnicate", "--x", "1")
    assert code == 2


def test_missing_required_flag_exit_2(capsys):
    code, _, _ = run(capsys, "integrate", "--a", "0", "--b", "1")
    assert code == 2


def test_flag_fuzz_never_raises(capsys):
    rng = np.random.default_rng(99)
    vocab = ["integrate", "project1", "optimize", "simulate", "control",
             "--expr", "--a", "--b", "--n", "--method", "simpson", "x^2",
             "--imu", "--out", "--q0", "--T", "--dt", "--model", "nope",
             "--scenario", "diver", "", "-1", "@@", "--seed", "()", "steps"]
    for _ in range(60):
        argv = [vocab[i] for i in rng.integers(0, len(vocab),
                                               size=rng.integers(0, 6))]
        code = main(argv)
        assert isinstance(code, int)
        capsys.readouterr()


# ---------------------------------------------------------------- goldens

def test_golden_project1(tmp_path, capsys):
    out_csv = tmp_path / "out.csv"
    out_svg = tmp_path / "plot.svg"
    code, _, _ = run(capsys, "project1", "--imu", str(DATA / "imu_fixture.csv"),
                     "--meas", str(DATA / "meas_fixture.csv"),
                     "--l1", "0.5", "--l2", "0.5",
                     "--out", str(out_csv), "--plot", str(out_svg))
    assert code == 0
    assert out_csv.read_bytes() == (GOLDEN / "project1_out.csv").read_bytes()
    assert out_svg.read_bytes() == (GOLDEN / "project1_plot.svg").read_bytes()


def test_golden_optimize_freethrow(capsys, monkeypatch):
    monkeypatch.chdir(DATA)           # keep the echoed config path relative
    code = main(["optimize", "--scenario", "freethrow", "--config",
                 "freethrow.json", "--mode", "fixed_tf", "--tf", "1.0"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == (GOLDEN / "optimize_freethrow.txt").read_text(encoding="utf-8")


def test_golden_simulate_segway(tmp_path, capsys):
    out_csv = tmp_path / "states.csv"
    code, _, _ = run(capsys, "simulate", "--model", "segway", "--q0", "0", "0.05",
                     "--T", "2", "--dt", "0.01", "--controller", "pd",
                     "--kp", "-28.62", "--kd", "-5.4",
                     "--precomp", "0.31446541", "--out", str(out_csv))
    assert code == 0
    assert out_csv.read_bytes() == (GOLDEN / "simulate_segway.csv").read_bytes()
