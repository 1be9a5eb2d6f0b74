import math

import numpy as np
import pytest

from calckit.errors import (ConvergenceError, DimensionError, DomainError,
                            SingularityError)
from calckit.opt import (ConstrainedProblem, DescentConfig, DiverModel,
                         FreeThrowParams, GymnastModel, bisection,
                         constrained_descent, diver_entry_orientation,
                         diver_entry_time, diver_optimize, freethrow_linear,
                         freethrow_opt, gradient_descent, gymnast_optimize,
                         lagrange_solve, newton_root)

ARMIJO = DescentConfig(backtracking="armijo")

BENCH_QUAD = ConstrainedProblem(lambda v: v[0] ** 2 + v[1] ** 2,
                                lambda v: np.array([v[0] + v[1] - 2.0]), 2, 1)
BENCH_CIRCLE = ConstrainedProblem(lambda v: v[0] + v[1],
                                  lambda v: np.array([v[0] ** 2 + v[1] ** 2 - 1.0]), 2, 1)


# ---------------------------------------------------------------- bisection

def test_bisection_sqrt2():
    root = bisection(lambda x: x * x - 2.0, 1.0, 2.0, tol=1e-10)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-10)


def test_bisection_root_at_origin():
    assert bisection(lambda x: x, -1.0, 2.0, tol=1e-8) == pytest.approx(0.0, abs=1e-8)


def test_bisection_no_sign_change():
    with pytest.raises(DomainError):
        bisection(lambda x: x * x + 1.0, 0.0, 1.0)


def test_bisection_budget_too_small():
    with pytest.raises(ConvergenceError):
        bisection(lambda x: x * x - 2.0, 1.0, 2.0, tol=1e-12, max_iters=5)


def test_bisection_bracket_width_halves_exactly():
    # observe the real solver through its probe points: after the two
    # endpoint evaluations every call is a bracket midpoint, and exact
    # halving of the bracket makes consecutive midpoint gaps halve exactly
    # (dyadic endpoints keep all of it exact in binary)
    probes = []

    def f(x):
        probes.append(x)
        return x * x - 2.0

    bisection(f, 1.0, 2.0, tol=1e-9)
    midpoints = probes[2:]
    gaps = [abs(b - a) for a, b in zip(midpoints, midpoints[1:])]
    assert len(gaps) >= 25
    for g0, g1 in zip(gaps, gaps[1:]):
        assert g1 == 0.5 * g0


# ---------------------------------------------------------------- newton

def test_newton_sqrt2_quadratic_convergence():
    x = newton_root(lambda v: np.array([v[0] ** 2 - 2.0]), [1.0],
                    tol=1e-12, max_iters=8)
    assert abs(x[0] - math.sqrt(2.0)) <= 1e-12


def test_newton_affine_single_iteration():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
    b = rng.standard_normal(3)
    x = newton_root(lambda v: a @ v - b, np.zeros(3), tol=1e-8, max_iters=1)
    assert np.max(np.abs(a @ x - b)) <= 1e-8


def test_newton_degenerate_root_exhausts_budget():
    with pytest.raises((ConvergenceError, SingularityError)):
        newton_root(lambda v: np.array([v[0] ** 2]), [1.0], tol=1e-12, max_iters=12)


# ---------------------------------------------------------------- descent

def test_quadratic_bowl_minimum():
    res = gradient_descent(lambda v: (v[0] - 3.0) ** 2 + (v[1] + 1.0) ** 2,
                           [0.0, 0.0], ARMIJO)
    assert res.converged
    assert res.x == pytest.approx([3.0, -1.0], abs=1e-6)


def test_start_at_optimum_stays_put():
    res = gradient_descent(lambda v: (v[0] - 3.0) ** 2 + (v[1] + 1.0) ** 2,
                           [3.0, -1.0], ARMIJO)
    assert res.converged and res.iterations <= 1
    assert res.x == pytest.approx([3.0, -1.0], abs=1e-8)


def test_rosenbrock_reaches_floor():
    rosen = lambda v: (1.0 - v[0]) ** 2 + 100.0 * (v[1] - v[0] ** 2) ** 2
    res = gradient_descent(rosen, [-1.2, 1.0], DescentConfig(backtracking="armijo",
                                                             max_iters=50_000))
    assert res.f_value < 1e-6


def test_objective_scaling_leaves_argmin():
    base = lambda v: (v[0] - 3.0) ** 2 + (v[1] + 1.0) ** 2
    ref = gradient_descent(base, [0.0, 0.0], ARMIJO).x
    for c in (0.5, 3.0):
        scaled = gradient_descent(lambda v: c * base(v), [0.0, 0.0], ARMIJO).x
        assert np.max(np.abs(scaled - ref)) <= 1e-6


# ------------------------------------------------------- constrained descent

def test_symmetric_quadratic_benchmark():
    res = constrained_descent(BENCH_QUAD, [0.0, 0.0], ARMIJO)
    assert res.converged
    assert res.x == pytest.approx([1.0, 1.0], abs=1e-7)
    # gradient (2, 2) + lambda * (1, 1) = 0 fixes lambda = -2
    assert res.lam == pytest.approx([-2.0], abs=1e-6)


def test_circle_benchmark_by_hand_lagrange():
    res = constrained_descent(BENCH_CIRCLE, [1.0, 0.0], ARMIJO)
    assert res.converged
    assert res.x == pytest.approx([-math.sqrt(0.5), -math.sqrt(0.5)], abs=1e-6)


def test_duplicated_constraint_rows_singular():
    prob = ConstrainedProblem(lambda v: v[0] ** 2 + v[1] ** 2,
                              lambda v: np.array([v[0] - 1.0, v[0] - 1.0]), 3, 2)
    with pytest.raises(SingularityError):
        constrained_descent(prob, [0.0, 0.0, 0.0], ARMIJO)


def test_restoration_never_inflates_violation():
    for prob, x0 in ((BENCH_QUAD, [4.0, -7.0]), (BENCH_CIRCLE, [1.0, 0.0])):
        res = constrained_descent(prob, x0, ARMIJO)
        assert res.converged
        for before, after in res.restoration_log:
            assert after <= before + 1e-12


def test_first_order_stationarity_at_solutions():
    from calckit import diffnum
    for prob, x0 in ((BENCH_QUAD, [0.0, 0.0]), (BENCH_CIRCLE, [1.0, 0.0])):
        res = constrained_descent(prob, x0, ARMIJO)
        g = diffnum.gradient(prob.objective, res.x)
        J = diffnum.jacobian(prob.h, res.x)
        assert np.max(np.abs(g + J.T @ res.lam)) <= 10.0 * ARMIJO.tol
        assert np.max(np.abs(prob.h(res.x))) <= 1e-7


def test_lagrange_matches_descent_on_quadratic():
    res = lagrange_solve(BENCH_QUAD, [0.0, 0.0])
    assert res.x == pytest.approx([1.0, 1.0], abs=1e-8)
    assert res.lam == pytest.approx([-2.0], abs=1e-7)


def test_lagrange_matches_descent_on_circle():
    descent = constrained_descent(BENCH_CIRCLE, [1.0, 0.0], ARMIJO)
    newton = lagrange_solve(BENCH_CIRCLE, [-1.0, -0.5], lam0=[0.5])
    assert np.max(np.abs(descent.x - newton.x)) <= 1e-6
    assert np.max(np.abs(descent.lam - newton.lam)) <= 1e-6


def test_lagrange_may_find_constrained_maximum():
    # stationary, not minimal: documented behavior for a far-off start
    res = lagrange_solve(BENCH_CIRCLE, [1.0, 0.0])
    r = math.sqrt(0.5)
    is_min = np.allclose(res.x, [-r, -r], atol=1e-6)
    is_max = np.allclose(res.x, [r, r], atol=1e-6)
    assert is_min or is_max


# ---------------------------------------------------------------- free throw

HOOP = FreeThrowParams([0.0, 2.0], [4.6, 3.05])


def test_freethrow_linear_hand_algebra():
    # p0 + v*tf - (0, g tf^2 / 2) = p_h with tf = 1:
    # vx = 4.6, vy = 3.05 - 2 + 4.905 = 5.955
    v = freethrow_linear(HOOP, 1.0)
    assert v == pytest.approx([4.6, 5.955], abs=1e-12)


def test_freethrow_linear_no_gravity():
    params = FreeThrowParams([0.0, 1.0], [3.0, 1.0], g=1e-12)
    v = freethrow_linear(params, 1.0)
    assert v == pytest.approx([3.0, 0.0], abs=1e-9)


def test_freethrow_linear_residual_definitional():
    v = freethrow_linear(HOOP, 1.0)
    assert np.max(np.abs(HOOP.ballistic(v, 1.0) - HOOP.p_h)) <= 1e-12


def test_freethrow_linear_rejects_nonpositive_tf():
    with pytest.raises(DomainError):
        freethrow_linear(HOOP, 0.0)


def test_freethrow_opt_fixed_tf_matches_linear():
    res = freethrow_opt(HOOP, "fixed_tf", tf=1.0)
    assert res.converged
    assert np.max(np.abs(res.v - freethrow_linear(HOOP, 1.0))) <= 1e-5


def test_freethrow_opt_free_mode():
    res = freethrow_opt(HOOP, "free")
    assert res.miss_distance < 1e-6


def test_freethrow_opt_fixed_speed_constraint_holds():
    res = freethrow_opt(HOOP, "fixed_speed", speed=9.0)
    assert res.v[0] ** 2 + res.v[1] ** 2 == pytest.approx(81.0, abs=1e-8)
    assert res.miss_distance <= 1e-3


def test_freethrow_opt_infeasible_speed_reports():
    with pytest.raises((DomainError, ConvergenceError)):
        freethrow_opt(HOOP, "fixed_speed", speed=1.0)


def test_freethrow_linear_vs_opt_20_random_hoops():
    rng = np.random.default_rng(101)
    for _ in range(20):
        params = FreeThrowParams(
            [0.0, float(rng.uniform(1.5, 2.2))],
            [float(rng.uniform(2.0, 6.0)), float(rng.uniform(2.4, 3.5))])
        tf = float(rng.uniform(0.7, 1.4))
        expected = freethrow_linear(params, tf)
        got = freethrow_opt(params, "fixed_tf", tf=tf)
        assert got.converged
        assert np.max(np.abs(got.v - expected)) <= 1e-5


# ---------------------------------------------------------------- gymnast

def test_gymnast_no_required_rotation_means_no_spin():
    model = GymnastModel(0.9, 30.0, 30.0, [0.0, 3.0], [0.5, 0.0], theta_land=0.0)
    res = gymnast_optimize(model)
    assert res.converged
    assert abs(res.omega) <= 1e-7


def test_gymnast_pure_drop_satisfies_constraints():
    model = GymnastModel(0.9, 30.0, 30.0, [0.0, 3.0], [0.0, 0.0], theta_land=0.0)
    res = gymnast_optimize(model)
    assert res.converged
    land_x = res.v0[0] * res.tf
    land_y = 3.0 + res.v0[1] * res.tf - 0.5 * 9.81 * res.tf ** 2
    assert abs(land_x - 0.0) <= 1e-7
    assert abs(land_y - 0.0) <= 1e-7
    assert abs(res.omega * res.tf - 0.0) <= 1e-7
    # free-fall drop: v0y = 0 and tf = sqrt(2 h / g) minimize launch effort
    assert res.tf == pytest.approx(math.sqrt(2.0 * 3.0 / 9.81), abs=1e-5)


def test_gymnast_mass_doubling_leaves_argmin():
    base = GymnastModel(0.9, 30.0, 30.0, [0.0, 3.0], [0.4, 0.0], theta_land=0.0)
    doubled = GymnastModel(0.9, 60.0, 60.0, [0.0, 3.0], [0.4, 0.0], theta_land=0.0)
    a, b = gymnast_optimize(base), gymnast_optimize(doubled)
    assert np.max(np.abs(a.v0 - b.v0)) <= 1e-6
    assert abs(a.omega - b.omega) <= 1e-6
    assert abs(a.tf - b.tf) <= 1e-6


def test_gymnast_with_rotation_hits_posture():
    model = GymnastModel(0.5, 5.0, 5.0, [0.0, 3.0], [1.0, 0.0],
                         theta_land=math.pi)
    res = gymnast_optimize(model)
    assert res.converged
    assert res.omega * res.tf == pytest.approx(math.pi, abs=1e-6)


def test_gymnast_heavy_bar_needs_fixed_steps():
    # armijo's unit trial step destabilizes this ill-scaled inertia;
    # the plain fixed-step mode walks the manifold reliably
    model = GymnastModel(0.9, 30.0, 30.0, [0.0, 3.0], [1.0, 0.0],
                         theta_land=math.pi)
    res = gymnast_optimize(model, DescentConfig(step=1e-3, max_iters=100_000))
    assert res.converged
    assert res.omega * res.tf == pytest.approx(math.pi, abs=1e-6)


# ---------------------------------------------------------------- diver

DIVER = DiverModel(i_open=1.0, i_tuck=0.4, k=1, d_min=1.0)


def test_diver_model_validation():
    with pytest.raises(DomainError):
        DiverModel(i_open=0.4, i_tuck=0.4, k=1, d_min=1.0)
    with pytest.raises(DomainError):
        DiverModel(i_open=1.0, i_tuck=0.4, k=0, d_min=1.0)


def test_diver_constraints_satisfied():
    res = diver_optimize(DIVER)
    assert res.converged
    assert abs(res.entry_angle_residual) <= 1e-6
    x_entry = res.v0[0] * res.entry_time
    assert abs(x_entry - DIVER.d_min) <= 1e-6


def test_diver_zero_tuck_window_is_rigid_case():
    te = diver_entry_time(1.0)
    for t1 in (0.0, 0.3 * te, te):
        theta = diver_entry_orientation(2.0, t1, t1, te, 1.0, 0.4)
        assert theta == pytest.approx(2.0 * te / 1.0, abs=1e-12)


def test_diver_near_rigid_matches_closed_form_momentum():
    # with I_tuck -> I_open the rotation constraint collapses to
    # L = k pi I_open / t_entry regardless of the tuck window
    model = DiverModel(i_open=1.0, i_tuck=1.0 - 1e-6, k=1, d_min=1.0)
    res = diver_optimize(model)
    assert res.converged
    expected = model.k * math.pi * model.i_open / res.entry_time
    assert res.L == pytest.approx(expected, abs=1e-4)


def test_diver_tuck_speeds_rotation():
    # tucking reduces the momentum needed for the same rotation
    rigid = DiverModel(i_open=1.0, i_tuck=1.0 - 1e-6, k=1, d_min=1.0)
    assert diver_optimize(DIVER).L < diver_optimize(rigid).L


def test_problem_dimension_validation():
    with pytest.raises(DimensionError):
        ConstrainedProblem(lambda v: 0.0, lambda v: v, 2, 2)
    with pytest.raises(DimensionError):
        constrained_descent(BENCH_QUAD, [0.0, 0.0, 0.0], ARMIJO)
