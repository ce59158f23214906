# models/barrier.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from autodiff.dual import primal, sqrt
from config import settings
from errors import DegenerateGradient, RelativeDegreeViolation
from models.systems import ControlAffineSystem
from schemas.scenario import Obstacle


@dataclass(frozen=True)
class Barrier:
    """h(x) = ‖x − c‖ − (r_c + ε_s) for a circular obstacle."""

    obstacle: Obstacle
    center: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        c = np.asarray(self.obstacle.center, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)

    @property
    def inflated_radius(self) -> float:
        return self.obstacle.radius + self.obstacle.margin


@dataclass(frozen=True)
class LieData:
    c_val: Any   # L_f h
    a_row: Any   # L_g h, length m


def _distance(b: Barrier, pos):
    diff = pos - b.center
    return diff, sqrt(diff @ diff)


def barrier_eval(b: Barrier, pos):
    _, dist = _distance(b, pos)
    return dist - b.inflated_radius


def barrier_gradient(b: Barrier, pos, grad_tol: float = settings.GRAD_TOL):
    diff, dist = _distance(b, pos)
    if not primal(dist) > grad_tol:
        raise DegenerateGradient(
            f"position {np.round(np.array([primal(p) for p in pos]), 12).tolist()} "
            f"is within {grad_tol:.1e} of the obstacle center"
        )
    return diff / dist


def lie_derivatives(
    sys: ControlAffineSystem,
    b: Barrier,
    x,
    grad_tol: float = settings.GRAD_TOL,
    a_tol: float = settings.A_TOL,
) -> LieData:
    k = sys.position_dims
    grad = barrier_gradient(b, x[:k], grad_tol)
    grad_full = np.zeros(sys.n, dtype=grad.dtype)
    grad_full[:k] = grad
    c_val = grad_full @ sys.drift(x)
    a_row = grad_full @ sys.input_map(x)
    norm = float(np.sqrt(sum(primal(e) ** 2 for e in np.atleast_1d(a_row))))
    if not norm >= a_tol:
        raise RelativeDegreeViolation(
            f"L_g h vanishes on {sys.name} (‖a‖ = {norm:.3e}); the barrier needs relative degree one"
        )
    return LieData(c_val=c_val, a_row=a_row)


def sigma_eval(lie: LieData, u0, alpha_h):
    """σ = c + a·u₀ + α(h)."""
    return lie.c_val + lie.a_row @ u0 + alpha_h
