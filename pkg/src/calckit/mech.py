"""Numerical Euler-Lagrange engine.

Given kinetic and potential energy functions K(q, qdot) and V(q), the robot
equation matrices are assembled by finite differencing alone:

    D(q)  = Hessian of K in qdot at qdot = 0 (symmetrized)
    C     = Christoffel combination of central-difference partials of D
    G(q)  = gradient of V

so D qddot + C qdot + G = B_u Gamma. For kinetic energies quadratic in qdot
(every model in the zoo) this reproduces the symbolic derivation to roundoff
and keeps the skew-symmetry of dD/dt - 2C. Finite-difference steps are fixed
at 1e-4; the zoo energies are smooth trig/polynomials at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import diffnum
from .errors import DimensionError, DomainError
from .linalg import lu_solve
from .odesolve import IvpProblem, rk4_solve
from .signals import SampledSignal

_FD_STEP = 1e-4
_ENERGY_FD = diffnum.DiffConfig(h=_FD_STEP, hessian_h=_FD_STEP, relative=False)


@dataclass(frozen=True)
class MechanicalModel:
    """Degrees of freedom, parameters, energies, and the actuator input map."""

    n_dof: int
    params: dict
    kinetic: Callable[[np.ndarray, np.ndarray], float]
    potential: Callable[[np.ndarray], float]
    input_map: np.ndarray    # n_dof x n_inputs, torques -> generalized forces
    name: str = "model"

    def __post_init__(self):
        b = np.asarray(self.input_map, dtype=float)
        if b.ndim != 2 or b.shape[0] != self.n_dof:
            raise DimensionError(
                f"input map must be {self.n_dof} x n_inputs, got shape {b.shape}"
            )
        object.__setattr__(self, "input_map", b)

    @property
    def n_inputs(self) -> int:
        return self.input_map.shape[1]

    def energy(self, q, qd) -> float:
        return float(self.kinetic(q, qd)) + float(self.potential(q))


@dataclass(frozen=True)
class RobotMatrices:
    D: np.ndarray
    C: np.ndarray
    G: np.ndarray


def _check_q(model: MechanicalModel, q) -> np.ndarray:
    q = np.atleast_1d(np.asarray(q, dtype=float))
    if len(q) != model.n_dof:
        raise DimensionError(f"configuration has {len(q)} coordinates, model has {model.n_dof}")
    return q


def mass_matrix(model: MechanicalModel, q) -> np.ndarray:
    """D(q): second-difference Hessian of K in the velocities at qdot = 0."""
    q = _check_q(model, q)

    def k_of_v(v):
        val = float(model.kinetic(q, v))
        if not np.isfinite(val):
            raise DomainError("kinetic energy is not finite")
        return val

    d = diffnum.hessian(k_of_v, np.zeros(model.n_dof), _ENERGY_FD)
    return 0.5 * (d + d.T)


def gravity_vector(model: MechanicalModel, q) -> np.ndarray:
    """G(q) = grad V."""
    q = _check_q(model, q)

    def v_of_q(qq):
        val = float(model.potential(qq))
        if not np.isfinite(val):
            raise DomainError("potential energy is not finite")
        return val

    return diffnum.gradient(v_of_q, q, _ENERGY_FD)


def mass_matrix_partials(model: MechanicalModel, q) -> list[np.ndarray]:
    """Central-difference partials dD/dq_k, one matrix per coordinate."""
    q = _check_q(model, q)
    partials = []
    for k in range(model.n_dof):
        e = np.zeros(model.n_dof)
        e[k] = _FD_STEP
        partials.append((mass_matrix(model, q + e) - mass_matrix(model, q - e))
                        / (2.0 * _FD_STEP))
    return partials


def coriolis_matrix(model: MechanicalModel, q, qd) -> np.ndarray:
    """C(q, qdot) from Christoffel symbols of the first kind:
    C_ij = sum_k (dD_ij/dq_k + dD_ik/dq_j - dD_jk/dq_i) qdot_k / 2."""
    q = _check_q(model, q)
    qd = _check_q(model, qd)
    n = model.n_dof
    dD = mass_matrix_partials(model, q)
    c = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += 0.5 * (dD[k][i, j] + dD[j][i, k] - dD[i][j, k]) * qd[k]
            c[i, j] = acc
    return c


def mass_matrix_rate(model: MechanicalModel, q, qd) -> np.ndarray:
    """dD/dt = sum_k dD/dq_k qdot_k, assembled from the same partials."""
    qd = _check_q(model, qd)
    dD = mass_matrix_partials(model, q)
    return sum(dD[k] * qd[k] for k in range(model.n_dof))


def robot_matrices(model: MechanicalModel, q, qd) -> RobotMatrices:
    return RobotMatrices(mass_matrix(model, q), coriolis_matrix(model, q, qd),
                         gravity_vector(model, q))


def forward_dynamics(model: MechanicalModel, q, qd, torques) -> np.ndarray:
    """qddot = D^-1 (B_u Gamma - C qdot - G)."""
    q = _check_q(model, q)
    qd = _check_q(model, qd)
    torques = np.atleast_1d(np.asarray(torques, dtype=float))
    if len(torques) != model.n_inputs:
        raise DimensionError(f"expected {model.n_inputs} torques, got {len(torques)}")
    mats = robot_matrices(model, q, qd)
    rhs = model.input_map @ torques - mats.C @ qd - mats.G
    return lu_solve(mats.D, rhs)


def simulate(model: MechanicalModel, controller, q0, qd0, T: float, dt: float) -> SampledSignal:
    """RK4 simulation of the full nonlinear model; states are [q; qdot].

    The controller (t, q, qdot) -> torques is sampled at every RK4 stage.
    None means zero input. Non-finite states abort with the blow-up time.
    """
    q0 = _check_q(model, q0)
    qd0 = _check_q(model, qd0)
    n = model.n_dof
    zero = np.zeros(model.n_inputs)

    def rhs(t, x):
        q, qd = x[:n], x[n:]
        torques = zero if controller is None else controller(t, q, qd)
        return np.concatenate([qd, forward_dynamics(model, q, qd, torques)])

    prob = IvpProblem(rhs, np.concatenate([q0, qd0]), 0.0, T)
    return rk4_solve(prob, dt)


# ---------------------------------------------------------------- model zoo

def pendulum(mass: float = 1.0, length: float = 1.0, gravity: float = 9.81) -> MechanicalModel:
    """Point-mass pendulum; q = angle from the hanging position."""

    def kinetic(q, qd):
        return 0.5 * mass * length ** 2 * qd[0] ** 2

    def potential(q):
        return mass * gravity * length * (1.0 - np.cos(q[0]))

    return MechanicalModel(1, {"mass": mass, "length": length, "gravity": gravity},
                           kinetic, potential, np.array([[1.0]]), name="pendulum")


def cart_pole_segway(cart_mass: float = 1.0, pole_mass: float = 1.0,
                     length: float = 1.0, gravity: float = 9.81) -> MechanicalModel:
    """Cart with an inverted point-mass pole; q = (cart position, lean angle),
    lean measured from upright. The single input is the horizontal force on
    the cart, the planar stand-in for a wheel torque."""

    def kinetic(q, qd):
        x_dot, th_dot = qd[0], qd[1]
        return (0.5 * (cart_mass + pole_mass) * x_dot ** 2
                + pole_mass * length * x_dot * th_dot * np.cos(q[1])
                + 0.5 * pole_mass * length ** 2 * th_dot ** 2)

    def potential(q):
        return pole_mass * gravity * length * np.cos(q[1])

    return MechanicalModel(
        2,
        {"cart_mass": cart_mass, "pole_mass": pole_mass, "length": length,
         "gravity": gravity},
        kinetic, potential, np.array([[1.0], [0.0]]), name="segway")


def planar_ballbot(ball_mass: float = 0.6, ball_radius: float = 0.12,
                   ball_inertia: float | None = None, torso_mass: float = 8.0,
                   torso_inertia: float = 0.24, com_offset: float = 0.3,
                   gravity: float = 9.81) -> MechanicalModel:
    """Torso balancing on a rolling ball; q = (ball angle, torso lean).

    The ball rolls without slipping (x = r * phi); the torso pivots about
    the ball center with its center of mass com_offset above it. One torque
    acts between torso and ball with the (+1, -1) reaction convention.
    Defaults are a documented test fixture, not measured hardware.
    """
    if ball_inertia is None:
        ball_inertia = 0.5 * ball_mass * ball_radius ** 2
    r, ell = ball_radius, com_offset

    def kinetic(q, qd):
        phi_dot, th_dot = qd[0], qd[1]
        vx_ball = r * phi_dot
        vx_t = r * phi_dot + ell * th_dot * np.cos(q[1])
        vy_t = -ell * th_dot * np.sin(q[1])
        return (0.5 * ball_mass * vx_ball ** 2 + 0.5 * ball_inertia * phi_dot ** 2
                + 0.5 * torso_mass * (vx_t ** 2 + vy_t ** 2)
                + 0.5 * torso_inertia * th_dot ** 2)

    def potential(q):
        return torso_mass * gravity * ell * np.cos(q[1])

    return MechanicalModel(
        2,
        {"ball_mass": ball_mass, "ball_radius": ball_radius,
         "ball_inertia": ball_inertia, "torso_mass": torso_mass,
         "torso_inertia": torso_inertia, "com_offset": com_offset,
         "gravity": gravity},
        kinetic, potential, np.array([[1.0], [-1.0]]), name="ballbot")


def gymnast_bar(m1: float = 30.0, m2: float = 30.0, half_length: float = 0.9,
                gravity: float = 9.81) -> MechanicalModel:
    """Free-floating bar with tip masses; q = (x, y, orientation).

    Unactuated: flight-phase dynamics only. Its rotational inertia
    (m1 + m2) * half_length^2 is the one the launch optimizer prices.
    """
    total = m1 + m2
    inertia = total * half_length ** 2

    def kinetic(q, qd):
        return 0.5 * total * (qd[0] ** 2 + qd[1] ** 2) + 0.5 * inertia * qd[2] ** 2

    def potential(q):
        return total * gravity * q[1]

    return MechanicalModel(3, {"m1": m1, "m2": m2, "half_length": half_length,
                               "gravity": gravity},
                           kinetic, potential, np.zeros((3, 0)), name="gymnast_bar")


MODEL_ZOO = {
    "pendulum": pendulum,
    "segway": cart_pole_segway,
    "ballbot": planar_ballbot,
    "gymnast_bar": gymnast_bar,
}
