# tests/test_model.py
import numpy as np
import pytest

from errors import DegenerateGradient, RelativeDegreeViolation
from models.barrier import Barrier, barrier_eval, barrier_gradient, lie_derivatives, sigma_eval
from models.nominal import ProportionalNominal, nominal_proportional
from models.systems import affine, double_integrator, planar_drone, single_integrator
from schemas.scenario import Obstacle
from tests.helpers import lie


# ---------- barrier ----------
def test_barrier_at_center(unit_barrier):
    assert barrier_eval(unit_barrier, np.zeros(2)) == pytest.approx(-1.2)


def test_barrier_on_inflated_circle(unit_barrier):
    assert barrier_eval(unit_barrier, np.array([0.0, 1.2])) == pytest.approx(0.0, abs=1e-15)


def test_barrier_three_four_five(unit_barrier):
    assert barrier_eval(unit_barrier, np.array([3.0, 4.0])) == pytest.approx(3.8)


def test_gradient_axis_aligned(unit_barrier):
    np.testing.assert_allclose(barrier_gradient(unit_barrier, np.array([2.0, 0.0])), [1.0, 0.0])


def test_gradient_unit_norm_and_finite_difference(rng):
    b = Barrier(Obstacle(center=[0.3, -0.7], radius=0.5, margin=0.1))
    eps = 1e-6
    for _ in range(50):
        pos = rng.uniform(-4.0, 4.0, size=2)
        if np.linalg.norm(pos - b.center) < 0.05:
            continue
        g = barrier_gradient(b, pos)
        assert np.linalg.norm(g) == pytest.approx(1.0, abs=1e-12)
        fd = [
            (barrier_eval(b, pos + eps * e) - barrier_eval(b, pos - eps * e)) / (2 * eps)
            for e in np.eye(2)
        ]
        np.testing.assert_allclose(g, fd, atol=1e-6)


def test_gradient_degenerate_at_center(unit_barrier):
    with pytest.raises(DegenerateGradient):
        barrier_gradient(unit_barrier, np.zeros(2))


# ---------- Lie derivatives ----------
def test_lie_single_integrator(si, unit_barrier):
    ld = lie_derivatives(si, unit_barrier, np.array([2.0, 0.0]))
    assert ld.c_val == pytest.approx(0.0)
    np.testing.assert_allclose(ld.a_row, [1.0, 0.0])


def test_lie_with_drift(unit_barrier):
    sys = affine(lambda x: np.array([1.0, 0.0]), lambda x: np.eye(2), n=2, m=2)
    ld = lie_derivatives(sys, unit_barrier, np.array([2.0, 0.0]))
    assert ld.c_val == pytest.approx(1.0)
    np.testing.assert_allclose(ld.a_row, [1.0, 0.0])


def test_lie_matches_finite_step_on_random_affine_system(rng, unit_barrier):
    for _ in range(20):
        A = rng.uniform(-1.0, 1.0, size=(2, 2))
        G = rng.uniform(-1.0, 1.0, size=(2, 2)) + np.eye(2)
        sys = affine(lambda x, A=A: A @ x, lambda x, G=G: G, n=2, m=2)
        x = rng.uniform(1.5, 3.0, size=2) * rng.choice([-1.0, 1.0], size=2)
        u = rng.uniform(-1.0, 1.0, size=2)
        ld = lie_derivatives(sys, unit_barrier, x)
        dt = 1e-6
        h_dot = (
            barrier_eval(unit_barrier, x + dt * sys.dynamics(x, u))
            - barrier_eval(unit_barrier, x - dt * sys.dynamics(x, u))
        ) / (2 * dt)
        assert ld.c_val + ld.a_row @ u == pytest.approx(h_dot, abs=1e-5)


def test_lie_rejects_relative_degree_two(unit_barrier):
    with pytest.raises(RelativeDegreeViolation):
        lie_derivatives(double_integrator(2), unit_barrier, np.array([2.0, 0.0, 0.0, 0.0]))


def test_lie_rejects_drone_position_barrier(unit_barrier):
    with pytest.raises(RelativeDegreeViolation):
        lie_derivatives(planar_drone(1.0, 0.1, 9.81), unit_barrier, np.array([2.0, 0.0, 0.0, 0.0, 0.0, 0.0]))


# ---------- sigma ----------
def test_sigma_zero():
    assert sigma_eval(lie(0.0, [1.0, 0.0]), np.zeros(2), 0.0) == 0.0


def test_sigma_arithmetic():
    assert sigma_eval(lie(1.0, [2.0, 0.0]), np.array([3.0, 0.0]), 0.5) == pytest.approx(7.5)


def test_sigma_minus_alpha_is_hdot(rng, si, unit_barrier):
    x = np.array([1.7, -0.9])
    u0 = rng.uniform(-1.0, 1.0, size=2)
    ld = lie_derivatives(si, unit_barrier, x)
    hdot = barrier_gradient(unit_barrier, x) @ si.dynamics(x, u0)
    assert sigma_eval(ld, u0, 0.3) - 0.3 == pytest.approx(hdot, abs=1e-14)


# ---------- nominal ----------
def test_nominal_at_goal():
    np.testing.assert_array_equal(nominal_proportional(np.ones(2), np.ones(2), 3.0), np.zeros(2))


def test_nominal_arithmetic():
    np.testing.assert_allclose(nominal_proportional(np.array([1.0, 0.0]), np.zeros(2), 2.0), [-2.0, 0.0])


def test_nominal_homogeneity(rng):
    for _ in range(20):
        x, xd = rng.normal(size=2), rng.normal(size=2)
        k = rng.uniform(0.1, 5.0)
        u0 = ProportionalNominal(goal=xd, k=k)(x)
        assert np.linalg.norm(u0) == pytest.approx(k * np.linalg.norm(x - xd), rel=1e-12)


# ---------- systems ----------
def test_single_integrator_dynamics():
    np.testing.assert_allclose(single_integrator(2).dynamics(np.zeros(2), np.array([1.0, -2.0])), [1.0, -2.0])


def test_double_integrator_dynamics():
    sys = double_integrator(2)
    x = np.array([0.0, 0.0, 1.0, 2.0])
    np.testing.assert_allclose(sys.dynamics(x, np.array([3.0, 4.0])), [1.0, 2.0, 3.0, 4.0])


def test_drone_hover_equilibrium():
    sys = planar_drone(mass=1.3, inertia=0.1, gravity=9.81)
    x = np.array([1.0, 2.0, 0.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(sys.dynamics(x, np.array([1.3 * 9.81, 0.0])), np.zeros(6), atol=1e-15)


def test_drone_tilt_accelerates_sideways():
    sys = planar_drone(mass=1.0, inertia=0.1, gravity=9.81)
    x = np.array([0.0, 0.0, 0.0, 0.0, 0.1, 0.0])
    xdot = sys.dynamics(x, np.array([10.0, 0.0]))
    assert xdot[2] == pytest.approx(-10.0 * np.sin(0.1))
    assert xdot[3] == pytest.approx(10.0 * np.cos(0.1) - 9.81)
