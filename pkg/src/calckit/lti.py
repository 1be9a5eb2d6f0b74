"""Transfer functions, state-space models, and PD feedback design.

Rational functions in the Laplace variable are stored as ascending real
coefficient arrays. Nothing here ever cancels pole/zero pairs automatically:
cancellation tolerances hide bugs, verbose output does not. Ideal PD
controllers are improper in isolation, so closed loops are always formed
symbolically (polynomial arithmetic) before any simulation; time responses
come from a controllable-canonical realization driven by RK4, never from a
numerical inverse Laplace transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import diffnum, mech, odesolve
from .errors import DimensionError, DomainError
from .poly import (degree, format_poly, poly_add, poly_eval, poly_mul,
                   roots_dk, trim)
from .signals import SampledSignal

__all__ = [
    "TransferFunction", "StateSpace", "StepMetrics", "PdGains",
    "poly_add", "poly_mul", "poly_eval", "roots_dk",
    "poles", "zeros", "pd_tf", "unity_feedback", "dc_gain", "precompensator",
    "tf_to_ss", "ss_to_tf", "step_response", "response_metrics",
    "pd_pole_placement", "linearize", "subsystem",
]


@dataclass(frozen=True)
class TransferFunction:
    """num / den with ascending coefficients; den must be nonzero."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self):
        num = trim(self.num)
        den = trim(self.den)
        if len(den) == 1 and den[0] == 0.0:
            raise DomainError("transfer function denominator is identically zero")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def proper(self) -> bool:
        return degree(self.num) <= degree(self.den)

    def __call__(self, s) -> complex:
        return poly_eval(self.num, s) / poly_eval(self.den, s)

    def __str__(self) -> str:
        return f"{format_poly(self.num)} / {format_poly(self.den)}"


@dataclass(frozen=True)
class StateSpace:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.atleast_2d(np.asarray(self.B, dtype=float))
        c = np.atleast_2d(np.asarray(self.C, dtype=float))
        d = np.atleast_2d(np.asarray(self.D, dtype=float))
        n = a.shape[0]
        if a.shape != (n, n):
            raise DimensionError(f"A must be square, got {a.shape}")
        if b.shape[0] != n:
            raise DimensionError(f"B must have {n} rows, got {b.shape}")
        if c.shape[1] != n:
            raise DimensionError(f"C must have {n} columns, got {c.shape}")
        if d.shape != (c.shape[0], b.shape[1]):
            raise DimensionError(
                f"D must be {c.shape[0]} x {b.shape[1]}, got {d.shape}")
        for name, m in (("A", a), ("B", b), ("C", c), ("D", d)):
            object.__setattr__(self, name, m)

    @property
    def n_states(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class StepMetrics:
    rise_time: float        # 10% -> 90% of the final value
    overshoot: float        # (peak - final) / |final|, floored at 0
    settling_time: float    # last exit from the +-2% band
    steady_state: float


@dataclass(frozen=True)
class PdGains:
    kp: float
    kd: float

    def __post_init__(self):
        if not (math.isfinite(self.kp) and math.isfinite(self.kd)):
            raise DomainError("PD gains must be finite")


def poles(tf: TransferFunction) -> list[complex]:
    return roots_dk(tf.den)


def zeros(tf: TransferFunction) -> list[complex]:
    if degree(tf.num) < 1:
        return []
    return roots_dk(tf.num)


def pd_tf(gains: PdGains) -> TransferFunction:
    """(kd s + kp) / 1. Improper alone; combine it in a closed loop."""
    return TransferFunction(np.array([gains.kp, gains.kd]), np.array([1.0]))


def unity_feedback(plant: TransferFunction, controller: TransferFunction,
                   precomp: float = 1.0) -> TransferFunction:
    """precomp * P C / (1 + P C), formed polynomially and required proper."""
    open_num = poly_mul(plant.num, controller.num)
    closed_den = poly_add(poly_mul(plant.den, controller.den), open_num)
    closed = TransferFunction(precomp * open_num, closed_den)
    if not closed.proper:
        raise DomainError("closed loop is improper; the plant must roll off")
    return closed


def dc_gain(tf: TransferFunction) -> float:
    den0 = float(tf.den[0])
    if den0 == 0.0:
        raise DomainError("pole at the origin; DC gain undefined")
    return float(tf.num[0]) / den0


def precompensator(tf: TransferFunction) -> float:
    """Static reference gain making the compensated DC gain exactly 1."""
    gain = dc_gain(tf)
    if gain == 0.0:
        raise DomainError("zero at the origin; cannot normalize DC gain")
    return 1.0 / gain


def tf_to_ss(tf: TransferFunction) -> StateSpace:
    """Controllable canonical realization of a proper transfer function."""
    if not tf.proper:
        raise DomainError("only proper transfer functions have a state-space form")
    den = tf.den / tf.den[-1]              # monic
    num = tf.num / tf.den[-1]
    n = len(den) - 1
    if n == 0:
        return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)),
                          np.zeros((1, 0)), np.array([[num[0]]]))
    b = np.zeros(n + 1)
    b[: len(num)] = num
    d = b[n]
    a = np.zeros((n, n))
    a[:-1, 1:] = np.eye(n - 1)
    a[-1, :] = -den[:-1]
    c = (b[:n] - d * den[:-1])[None, :]
    bcol = np.zeros((n, 1))
    bcol[-1, 0] = 1.0
    return StateSpace(a, bcol, c, np.array([[d]]))


def ss_to_tf(ss: StateSpace, input: int = 0, output: int = 0) -> TransferFunction:
    """SISO transfer function of (A, B, C, D) via the Faddeev resolvent.

    den is the characteristic polynomial; num = C N(s) B + D den with N the
    adjugate expansion of (sI - A)^-1. Common factors are reported, never
    cancelled.
    """
    if not 0 <= input < ss.B.shape[1]:
        raise DimensionError(f"input index {input} out of range")
    if not 0 <= output < ss.C.shape[0]:
        raise DimensionError(f"output index {output} out of range")
    den, resolvent = odesolve.faddeev(ss.A)
    n = ss.n_states
    b = ss.B[:, input]
    c = ss.C[output, :]
    num = np.zeros(n + 1)
    for k, mat in enumerate(resolvent):      # mat weights s^(n-1-k)
        num[n - 1 - k] = c @ mat @ b
    num = num + ss.D[output, input] * den
    return TransferFunction(num, den)


def subsystem(ss: StateSpace, states, inputs=None, outputs=None,
              tol: float = 1e-9) -> StateSpace:
    """Exact structural restriction to a subset of states.

    Valid only when the kept states evolve independently of the dropped ones
    (the corresponding A block is zero within tol); anything else raises
    DomainError. This is a structure check, not a pole-zero cancellation.
    """
    states = list(states)
    inputs = list(range(ss.B.shape[1])) if inputs is None else list(inputs)
    outputs = list(range(ss.C.shape[0])) if outputs is None else list(outputs)
    dropped = [i for i in range(ss.n_states) if i not in states]
    scale = 1.0 + float(np.max(np.abs(ss.A))) if ss.A.size else 1.0
    if dropped:
        coupling = np.max(np.abs(ss.A[np.ix_(states, dropped)]))
        if coupling > tol * scale:
            raise DomainError(
                f"kept states couple to dropped states (|A| = {coupling:.3e})")
        if np.max(np.abs(ss.C[np.ix_(outputs, dropped)])) > tol:
            raise DomainError("kept outputs read dropped states")
    return StateSpace(ss.A[np.ix_(states, states)], ss.B[np.ix_(states, inputs)],
                      ss.C[np.ix_(outputs, states)], ss.D[np.ix_(outputs, inputs)])


def linearize(model: mech.MechanicalModel, q_eq, torques_eq) -> StateSpace:
    """Linear state-variable model about an equilibrium (q_eq, 0, Gamma_eq).

    States are x = (q, qdot); C selects the configuration, D = 0. The point
    must actually be an equilibrium: the acceleration residual there is
    checked against 1e-6.
    """
    q_eq = np.atleast_1d(np.asarray(q_eq, dtype=float))
    torques_eq = np.atleast_1d(np.asarray(torques_eq, dtype=float))
    n = model.n_dof
    residual = float(np.max(np.abs(
        mech.forward_dynamics(model, q_eq, np.zeros(n), torques_eq))))
    if residual > 1e-6:
        raise DomainError(
            f"(q_eq, 0) is not an equilibrium: ||qddot||_inf = {residual:.3e}")

    def dynamics(x):
        q, qd = x[:n], x[n:]
        return np.concatenate([qd, mech.forward_dynamics(model, q, qd, torques_eq)])

    def forced(u):
        return np.concatenate([np.zeros(n),
                               mech.forward_dynamics(model, q_eq, np.zeros(n), u)])

    x_eq = np.concatenate([q_eq, np.zeros(n)])
    a = diffnum.jacobian(dynamics, x_eq, diffnum.DiffConfig(h=1e-5, relative=False))
    b = diffnum.jacobian(forced, torques_eq, diffnum.DiffConfig(h=1e-5, relative=False))
    c = np.hstack([np.eye(n), np.zeros((n, n))])
    d = np.zeros((n, model.n_inputs))
    return StateSpace(a, b, c, d)


def step_response(tf: TransferFunction, T: float, dt: float) -> SampledSignal:
    """Unit-step output via the canonical realization and RK4."""
    if T <= 0:
        raise DomainError("horizon must be positive")
    ss = tf_to_ss(tf)
    if ss.n_states == 0:
        ts = np.arange(0.0, T + dt / 2, dt)
        return SampledSignal(ts, np.full_like(ts, float(ss.D[0, 0])))
    a, b = ss.A, ss.B[:, 0]

    def rhs(t, x):
        return a @ x + b

    states = odesolve.rk4_solve(odesolve.IvpProblem(rhs, np.zeros(ss.n_states), 0.0, T), dt)
    y = states.y @ ss.C[0] + ss.D[0, 0]
    if np.max(np.abs(y)) > 1e9:
        t_blow = float(states.t[int(np.argmax(np.abs(y) > 1e9))])
        raise DomainError(f"step response exceeds 1e9 at t = {t_blow} (unstable)")
    return SampledSignal(states.t, y)


def _crossing_time(t: np.ndarray, y: np.ndarray, level: float) -> float:
    """First time y crosses the level, linearly interpolated."""
    for k in range(1, len(y)):
        y0, y1 = y[k - 1], y[k]
        if (y0 - level) * (y1 - level) <= 0 and y0 != y1:
            return float(t[k - 1] + (level - y0) / (y1 - y0) * (t[k] - t[k - 1]))
        if y1 == level:
            return float(t[k])
    raise DomainError(f"response never reaches level {level}")


def response_metrics(sig: SampledSignal, final_hint: float | None = None) -> StepMetrics:
    """Rise (10-90%), overshoot, 2% settling time, and the steady state.

    Without a hint the final value is the average over the last 5% of the
    record, so the horizon must comfortably outlast the transient.
    """
    t = sig.t
    y = sig.channel(0)
    if final_hint is not None:
        final = float(final_hint)
    else:
        tail = max(2, int(0.05 * len(y)))
        final = float(np.mean(y[-tail:]))
    if final == 0.0:
        raise DomainError("zero final value; metrics are undefined")
    t10 = _crossing_time(t, y, 0.1 * final)
    t90 = _crossing_time(t, y, 0.9 * final)
    peak = float(np.max(y)) if final > 0 else float(np.min(y))
    overshoot = max(0.0, (peak - final) / abs(final) * (1.0 if final > 0 else -1.0))
    outside = np.abs(y - final) > 0.02 * abs(final)
    settling = float(t[int(np.nonzero(outside)[0][-1])]) if np.any(outside) else float(t[0])
    return StepMetrics(max(0.0, t90 - t10), overshoot, settling, final)


def pd_pole_placement(plant: TransferFunction, wn: float, zeta: float) -> PdGains:
    """PD gains putting the unity-feedback poles of b / (s^2 + a1 s + a0) at
    the roots of s^2 + 2 zeta wn s + wn^2."""
    if wn <= 0 or zeta <= 0:
        raise DomainError("need wn > 0 and zeta > 0")
    if degree(plant.den) != 2 or degree(plant.num) != 0:
        raise DomainError(
            "pole placement needs a plant of the exact form b / (s^2 + a1 s + a0)")
    lead = plant.den[2]
    a0, a1 = plant.den[0] / lead, plant.den[1] / lead
    b = plant.num[0] / lead
    if b == 0.0:
        raise DomainError("plant gain is zero")
    return PdGains(kp=(wn ** 2 - a0) / b, kd=(2.0 * zeta * wn - a1) / b)
