"""Batch command-line surface.

Subcommands: integrate (quadrature of a parsed expression), project1 (IMU
odometry from CSV), optimize (free throw / gymnast / diver from JSON),
simulate (nonlinear model rollout to CSV), control (linearize / step / pd).

Exit codes: 0 success, 2 input error, 3 non-convergence. All reports go to
stdout and are deterministic for fixed inputs and --seed; wall time is the
one nondeterministic line and goes to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import funcexpr, lti, mech, odo, opt, quad, svgplot
from .errors import CalcError, ConvergenceError
from .signals import write_csv


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:12]


def _report_header(args, inputs=()):
    print(f"command: {' '.join(args._echo)}")
    print(f"seed: {args.seed}")
    for path in inputs:
        print(f"input: {path} sha256:{_digest(path)}")


def _expr_fn(text: str, var: str):
    ast = funcexpr.parse_text(text)
    return lambda x: funcexpr.evaluate(ast, {var: float(x)})


# ---------------------------------------------------------------- integrate

def cmd_integrate(args) -> int:
    f = _expr_fn(args.expr, args.var)
    iv = quad.Interval(args.a, args.b)
    _report_header(args)
    if args.method == "darboux":
        lower, upper = quad.darboux_bounds(f, iv, args.n, args.subsamples)
        print(f"lower: {_fmt(lower)}")
        print(f"upper: {_fmt(upper)}")
    elif args.method in ("riemann-left", "riemann-right", "midpoint"):
        scheme = {"riemann-left": "left", "riemann-right": "right",
                  "midpoint": "midpoint"}[args.method]
        print(f"value: {_fmt(quad.riemann_sum(f, iv, args.n, scheme))}")
    elif args.method == "trapezoid":
        print(f"value: {_fmt(quad.trapezoid(f, iv, args.n))}")
    else:
        print(f"value: {_fmt(quad.simpson(f, iv, args.n))}")
    return 0


# ---------------------------------------------------------------- project 1

def cmd_project1(args) -> int:
    trace = odo.read_imu_csv(args.imu)
    d = trace.dim
    zeros = np.zeros(d)
    inputs = [args.imu]
    if args.meas:
        inputs.append(args.meas)
        measurements = odo.read_measurements_csv(args.meas)
        gains = odo.FilterGains(args.l1, args.l2)
        result = odo.bias_corrected_odometry(trace, measurements, gains,
                                             zeros, zeros, zeros)
        bias = result.final_bias
    else:
        result = odo.dead_reckon(trace, zeros, zeros)
        bias = zeros
    _report_header(args, inputs)
    odo.write_odometry_csv(result, args.out)
    final_p = result.p.y[-1]
    print(f"final position: {' '.join(_fmt(v) for v in final_p)}")
    print(f"final bias estimate: {' '.join(_fmt(v) for v in bias)}")
    print(f"wrote: {args.out}")
    if args.plot:
        series = [(f"v{odo.AXIS_NAMES[i]}", result.v.y[:, i]) for i in range(d)]
        series += [(f"p{odo.AXIS_NAMES[i]}", result.p.y[:, i]) for i in range(d)]
        svgplot.line_chart(args.plot, "odometry", result.v.t, series)
        print(f"wrote: {args.plot}")
    return 0


# ---------------------------------------------------------------- optimize

def _load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_optimize(args) -> int:
    config = _load_json(args.config)
    _report_header(args, [args.config])
    cfg = opt.DescentConfig(backtracking="armijo", max_iters=args.max_iters,
                            tol=1e-6 if args.scenario == "diver" else 1e-8)
    if args.scenario == "freethrow":
        params = opt.FreeThrowParams(np.asarray(config["p0"], float),
                                     np.asarray(config["p_h"], float),
                                     config.get("g", 9.81))
        result = opt.freethrow_opt(params, args.mode, tf=args.tf, speed=args.speed,
                                   cfg=cfg)
        print(f"v0: {_fmt(result.v[0])} {_fmt(result.v[1])}")
        print(f"tf: {_fmt(result.tf)}")
        print(f"miss_distance: {_fmt(result.miss_distance)}")
        residual = result.miss_distance
        converged = result.converged
    elif args.scenario == "gymnast":
        model = opt.GymnastModel(config["half_length"], config["m1"], config["m2"],
                                 np.asarray(config["p0"], float),
                                 np.asarray(config["p_land"], float),
                                 config["theta_land"], config.get("g", 9.81))
        result = opt.gymnast_optimize(model, cfg)
        print(f"v0: {_fmt(result.v0[0])} {_fmt(result.v0[1])}")
        print(f"omega: {_fmt(result.omega)}")
        print(f"tf: {_fmt(result.tf)}")
        print(f"objective: {_fmt(result.objective)}")
        land = model.p0 + result.v0 * result.tf - np.array(
            [0.0, 0.5 * model.g * result.tf ** 2])
        residual = float(max(np.max(np.abs(land - model.p_land)),
                             abs(result.omega * result.tf - model.theta_land)))
        converged = result.converged
    elif args.scenario == "diver":
        model = opt.DiverModel(config["i_open"], config["i_tuck"], config["k"],
                               config["d_min"], config.get("platform_height", 10.0))
        result = opt.diver_optimize(model, cfg)
        print(f"v0: {_fmt(result.v0[0])} {_fmt(result.v0[1])}")
        print(f"L: {_fmt(result.L)}")
        print(f"tuck window: {_fmt(result.t_tuck_start)} {_fmt(result.t_tuck_end)}")
        print(f"entry time: {_fmt(result.entry_time)}")
        residual = abs(result.entry_angle_residual)
        converged = result.converged
    else:
        raise CalcError(f"unknown scenario {args.scenario!r}")
    print(f"constraint residual: {_fmt(residual)}")
    print(f"converged: {converged}")
    if not converged:
        raise ConvergenceError(f"{args.scenario} solve did not converge")
    return 0


# ---------------------------------------------------------------- simulate

_LEAN_COORD = {"pendulum": 0, "segway": 1, "ballbot": 1}


def _build_model(name: str, config_path):
    factory = mech.MODEL_ZOO.get(name)
    if factory is None:
        raise CalcError(f"unknown model {name!r}")
    kwargs = _load_json(config_path) if config_path else {}
    return factory(**kwargs)


def cmd_simulate(args) -> int:
    model = _build_model(args.model, args.config)
    n = model.n_dof
    q0 = np.asarray(args.q0, float)
    qd0 = np.asarray(args.qd0, float) if args.qd0 else np.zeros(n)
    inputs = [args.config] if args.config else []
    _report_header(args, inputs)
    coord = _LEAN_COORD.get(args.model, 0)
    controller = None
    if args.controller == "pd":
        kp, kd, pre, ref = args.kp, args.kd, args.precomp, args.ref

        def controller(t, q, qd):
            return np.array([pre * ref - kp * q[coord] - kd * qd[coord]])

    states = mech.simulate(model, controller, q0, qd0, args.T, args.dt)
    headers = [f"q{i}" for i in range(n)] + [f"qd{i}" for i in range(n)]
    write_csv(states, args.out, headers=headers)
    print(f"wrote: {args.out}")
    if args.controller == "pd":
        err = abs(states.y[-1, coord] - args.ref)
        print(f"final regulation error: {_fmt(err)}")
    else:
        e0 = model.energy(q0, qd0)
        eT = model.energy(states.y[-1, :n], states.y[-1, n:])
        drift = abs(eT - e0) / max(abs(e0), 1e-12)
        print(f"relative energy drift: {_fmt(drift)}")
    return 0


# ---------------------------------------------------------------- control

def _print_pole_table(values) -> None:
    print(f"{'real':>16} {'imag':>16}")
    for v in values:
        print(f"{v.real:>16.8f} {v.imag:>16.8f}")


def _design_plant(model_name: str, config_path):
    """Lean-angle SISO plant of a zoo model linearized about upright/rest."""
    model = _build_model(model_name, config_path)
    ss = lti.linearize(model, np.zeros(model.n_dof), np.zeros(model.n_inputs))
    if model.n_dof == 1:
        return ss, lti.ss_to_tf(ss, 0, 0)
    coord = _LEAN_COORD.get(model_name, model.n_dof - 1)
    n = model.n_dof
    reduced = lti.subsystem(ss, [coord, n + coord], outputs=[coord])
    return ss, lti.ss_to_tf(reduced, 0, 0)


def cmd_control(args) -> int:
    _report_header(args, [args.config] if getattr(args, "config", None) else [])
    if args.control_cmd == "linearize":
        ss, tf = _design_plant(args.model, args.config)
        print("A:")
        for row in ss.A:
            print("  " + " ".join(_fmt(v) for v in row))
        print("B:")
        for row in ss.B:
            print("  " + " ".join(_fmt(v) for v in row))
        print(f"lean transfer function: {tf}")
        return 0
    if args.control_cmd == "step":
        tf = lti.TransferFunction(np.asarray(args.num, float), np.asarray(args.den, float))
        sig = lti.step_response(tf, args.T, args.dt)
        try:
            hint = lti.dc_gain(tf)
        except CalcError:
            hint = None     # pole at the origin: fall back to tail averaging
        metrics = lti.response_metrics(sig, final_hint=hint)
        if args.out:
            write_csv(sig, args.out, headers=["y"])
            print(f"wrote: {args.out}")
        print(f"steady state: {_fmt(metrics.steady_state)}")
        print(f"rise time: {_fmt(metrics.rise_time)}")
        print(f"overshoot: {_fmt(metrics.overshoot)}")
        print(f"settling time: {_fmt(metrics.settling_time)}")
        return 0
    if args.control_cmd == "pd":
        _, plant = _design_plant(args.model, args.config)
        gains = lti.pd_pole_placement(plant, args.wn, args.zeta)
        closed = lti.unity_feedback(plant, lti.pd_tf(gains))
        pre = lti.precompensator(closed)
        closed = lti.unity_feedback(plant, lti.pd_tf(gains), precomp=pre)
        print(f"plant: {plant}")
        print(f"kp: {_fmt(gains.kp)}")
        print(f"kd: {_fmt(gains.kd)}")
        print(f"precompensator: {_fmt(pre)}")
        print("closed-loop poles:")
        _print_pole_table(lti.poles(closed))
        sig = lti.step_response(closed, args.T, args.dt)
        metrics = lti.response_metrics(sig, final_hint=lti.dc_gain(closed))
        print(f"steady state: {_fmt(metrics.steady_state)}")
        print(f"rise time: {_fmt(metrics.rise_time)}")
        print(f"overshoot: {_fmt(metrics.overshoot)}")
        print(f"settling time: {_fmt(metrics.settling_time)}")
        return 0
    raise CalcError(f"unknown control subcommand {args.control_cmd!r}")


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="calckit",
                                     description="numerical calculus and control toolkit")
    parser.add_argument("--seed", type=int, default=0,
                        help="echoed into reports; commands are deterministic")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("integrate", help="definite integral of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--var", default="x")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--method", default="simpson",
                   choices=["riemann-left", "riemann-right", "midpoint",
                            "trapezoid", "simpson", "darboux"])
    p.add_argument("--subsamples", type=int, default=8,
                   help="per-panel subsamples for darboux")
    p.set_defaults(fn=cmd_integrate)

    p = sub.add_parser("project1", help="IMU odometry from CSV traces")
    p.add_argument("--imu", required=True)
    p.add_argument("--meas")
    p.add_argument("--l1", type=float, default=0.5)
    p.add_argument("--l2", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.add_argument("--plot")
    p.set_defaults(fn=cmd_project1)

    p = sub.add_parser("optimize", help="projectile scenario optimization")
    p.add_argument("--scenario", required=True,
                   choices=["freethrow", "gymnast", "diver"])
    p.add_argument("--config", required=True)
    p.add_argument("--mode", default="free",
                   choices=["free", "fixed_tf", "fixed_speed"])
    p.add_argument("--tf", type=float)
    p.add_argument("--speed", type=float)
    p.add_argument("--max-iters", type=int, default=50_000,
                   help="descent iteration budget; exhaustion exits 3")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("simulate", help="nonlinear model rollout")
    p.add_argument("--model", required=True, choices=sorted(mech.MODEL_ZOO))
    p.add_argument("--config")
    p.add_argument("--q0", type=float, nargs="+", required=True)
    p.add_argument("--qd0", type=float, nargs="+")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--controller", choices=["pd"])
    p.add_argument("--kp", type=float, default=0.0)
    p.add_argument("--kd", type=float, default=0.0)
    p.add_argument("--precomp", type=float, default=1.0)
    p.add_argument("--ref", type=float, default=0.0)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("control", help="linearization and PD design")
    csub = p.add_subparsers(dest="control_cmd", required=True)

    c = csub.add_parser("linearize", help="A, B and lean transfer function")
    c.add_argument("--model", required=True, choices=sorted(mech.MODEL_ZOO))
    c.add_argument("--config")
    c.set_defaults(fn=cmd_control)

    c = csub.add_parser("step", help="step response and transient metrics")
    c.add_argument("--num", type=float, nargs="+", required=True,
                   help="numerator coefficients, ascending powers")
    c.add_argument("--den", type=float, nargs="+", required=True,
                   help="denominator coefficients, ascending powers")
    c.add_argument("--T", type=float, default=10.0)
    c.add_argument("--dt", type=float, default=1e-3)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_control)

    c = csub.add_parser("pd", help="pole placement on a zoo model")
    c.add_argument("--model", required=True, choices=sorted(mech.MODEL_ZOO))
    c.add_argument("--config")
    c.add_argument("--wn", type=float, required=True)
    c.add_argument("--zeta", type=float, required=True)
    c.add_argument("--T", type=float, default=10.0)
    c.add_argument("--dt", type=float, default=1e-3)
    c.set_defaults(fn=cmd_control)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    args._echo = ["calckit"] + argv
    start = time.perf_counter()
    try:
        code = args.fn(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc!r}", file=sys.stderr)
        return 2
    print(f"wall time: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
