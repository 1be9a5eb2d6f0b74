import math

import numpy as np
import pytest

from calckit.errors import DimensionError, DomainError
from calckit.linalg import determinant
from calckit.odesolve import (IvpProblem, char_poly, eigenvalues, euler_solve,
                              matrix_exponential, rk4_solve)


def decay(x0=1.0, tf=1.0):
    return IvpProblem(lambda t, x: -x, [x0], 0.0, tf)


def test_constant_state_both_methods():
    prob = IvpProblem(lambda t, x: np.zeros_like(x), [5.0], 0.0, 2.0)
    for solver in (euler_solve, rk4_solve):
        sig = solver(prob, 0.1)
        assert np.all(sig.y == 5.0)
        assert sig.t[-1] == 2.0


def test_rk4_exponential_decay():
    sig = rk4_solve(decay(), 0.01)
    assert sig.y[-1, 0] == pytest.approx(math.exp(-1.0), abs=1e-8)


def test_euler_first_order_error():
    errs = [abs(euler_solve(decay(), dt).y[-1, 0] - math.exp(-1.0))
            for dt in (0.01, 0.005)]
    assert 1.8 <= errs[0] / errs[1] <= 2.2


def test_rk4_fourth_order_error():
    errs = [abs(rk4_solve(decay(), dt).y[-1, 0] - math.exp(-1.0))
            for dt in (0.1, 0.05, 0.025)]
    assert 14.0 <= errs[0] / errs[1] <= 18.0
    assert 14.0 <= errs[1] / errs[2] <= 18.0


def test_partial_final_step_lands_on_tf():
    prob = IvpProblem(lambda t, x: x * 0.0 + 1.0, [0.0], 0.0, 1.0)
    sig = rk4_solve(prob, 0.3)
    assert sig.t[-1] == 1.0
    assert sig.y[-1, 0] == pytest.approx(1.0, abs=1e-12)


def test_nonfinite_rhs_reports_blowup():
    prob = IvpProblem(lambda t, x: x ** 3, [10.0], 0.0, 5.0)
    with pytest.raises(DomainError):
        rk4_solve(prob, 0.1)


def test_expm_at_zero_is_identity():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 4))
    assert np.array_equal(matrix_exponential(a, 0.0), np.eye(4))


def test_expm_nilpotent_series_terminates():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    for t in (0.5, 1.0, 3.0):
        assert np.max(np.abs(matrix_exponential(a, t)
                             - np.array([[1.0, t], [0.0, 1.0]]))) <= 1e-15


def test_expm_diagonal():
    got = matrix_exponential(np.diag([1.0, 2.0]), 1.0)
    assert np.max(np.abs(got - np.diag([math.e, math.e ** 2]))) <= 1e-12


def test_expm_semigroup_property():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = rng.standard_normal((3, 3)) - 2.0 * np.eye(3)
        t1, t2 = rng.uniform(0.1, 1.5, size=2)
        lhs = matrix_exponential(a, t1 + t2)
        rhs = matrix_exponential(a, t1) @ matrix_exponential(a, t2)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_expm_columns_match_rk4():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 3)) - 1.5 * np.eye(3)
    expm = matrix_exponential(a, 1.0)
    for j in range(3):
        e = np.zeros(3)
        e[j] = 1.0
        sig = rk4_solve(IvpProblem(lambda t, x: a @ x, e, 0.0, 1.0), 1e-3)
        assert np.max(np.abs(sig.y[-1] - expm[:, j])) <= 1e-6


def test_expm_rejects_nonsquare():
    with pytest.raises(DimensionError):
        matrix_exponential(np.ones((2, 3)), 1.0)


def test_char_poly_identity():
    # (s - 1)^2 = s^2 - 2s + 1
    assert np.allclose(char_poly(np.eye(2)), [1.0, -2.0, 1.0], atol=1e-14)


def test_char_poly_companion_hand_determinant():
    # det(sI - A) for A = [[0,1],[-2,-3]] is s^2 + 3s + 2
    assert np.allclose(char_poly([[0.0, 1.0], [-2.0, -3.0]]),
                       [2.0, 3.0, 1.0], atol=1e-14)


def test_char_poly_constant_term_is_signed_determinant():
    rng = np.random.default_rng(3)
    for n in (2, 3, 4, 5):
        a = rng.standard_normal((n, n))
        c0 = char_poly(a)[0]
        assert c0 == pytest.approx((-1.0) ** n * determinant(a), abs=1e-8)


def test_char_poly_size_cap():
    with pytest.raises(DimensionError):
        char_poly(np.eye(13))


def test_eigenvalues_diagonal():
    got = eigenvalues(np.diag([3.0, -1.0]))
    assert got[0] == pytest.approx(-1.0 + 0j, abs=1e-10)
    assert got[1] == pytest.approx(3.0 + 0j, abs=1e-10)
    assert all(v.imag == 0.0 for v in got)


def test_eigenvalues_companion():
    got = eigenvalues([[0.0, 1.0], [-2.0, -3.0]])
    assert got[0] == pytest.approx(-2.0 + 0j, abs=1e-8)
    assert got[1] == pytest.approx(-1.0 + 0j, abs=1e-8)
    assert all(v.imag == 0.0 for v in got)


def test_eigenvalues_rotation_pure_imaginary():
    got = eigenvalues([[0.0, -1.0], [1.0, 0.0]])
    assert got[0] == pytest.approx(-1j, abs=1e-10)
    assert got[1] == pytest.approx(1j, abs=1e-10)


def test_eigenvalue_sum_matches_trace():
    rng = np.random.default_rng(4)
    for n in (2, 3, 4, 5, 6):
        a = rng.standard_normal((n, n))
        s = sum(eigenvalues(a))
        assert s.real == pytest.approx(np.trace(a), abs=1e-7)
        assert abs(s.imag) <= 1e-7


def test_ivp_validation():
    with pytest.raises(DomainError):
        IvpProblem(lambda t, x: x, [1.0], 1.0, 0.0)
    with pytest.raises(DomainError):
        rk4_solve(decay(), -0.1)
