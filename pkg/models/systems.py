# models/systems.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from autodiff.dual import Dual, HyperDual, cos, sin

VectorField = Callable[[np.ndarray], np.ndarray]
MatrixField = Callable[[np.ndarray], np.ndarray]


class SystemKind(str, Enum):
    SINGLE_INTEGRATOR = "SingleIntegrator"
    DOUBLE_INTEGRATOR = "DoubleIntegrator"
    PLANAR_DRONE = "PlanarDrone"


STATE_DIM = {
    SystemKind.SINGLE_INTEGRATOR: 2,
    SystemKind.DOUBLE_INTEGRATOR: 4,
    SystemKind.PLANAR_DRONE: 6,
}


def _array(entries) -> np.ndarray:
    if any(isinstance(e, (Dual, HyperDual)) for e in entries):
        return np.array(entries, dtype=object)
    return np.array(entries, dtype=float)


@dataclass(frozen=True)
class ControlAffineSystem:
    """ẋ = f(x) + g(x)u. Position occupies the first `position_dims` entries."""

    n: int
    m: int
    drift: VectorField
    input_map: MatrixField
    position_dims: int = 2
    name: str = "affine"

    def dynamics(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        return self.drift(x) + self.input_map(x) @ u


# ---------- builders ----------
def single_integrator(dim: int = 2) -> ControlAffineSystem:
    eye = np.eye(dim)
    return ControlAffineSystem(
        n=dim,
        m=dim,
        drift=lambda x: np.zeros(dim),
        input_map=lambda x: eye,
        position_dims=dim,
        name=SystemKind.SINGLE_INTEGRATOR.value,
    )


def double_integrator(dim: int = 2) -> ControlAffineSystem:
    g = np.vstack([np.zeros((dim, dim)), np.eye(dim)])

    def drift(x):
        return _array(list(x[dim:]) + [0.0] * dim)

    return ControlAffineSystem(
        n=2 * dim,
        m=dim,
        drift=drift,
        input_map=lambda x: g,
        position_dims=dim,
        name=SystemKind.DOUBLE_INTEGRATOR.value,
    )


def planar_drone(mass: float, inertia: float, gravity: float) -> ControlAffineSystem:
    """State (x1, x2, ẋ1, ẋ2, θ, θ̇), input (F, τ)."""

    def drift(x):
        return _array([x[2], x[3], 0.0, -gravity, x[5], 0.0])

    def input_map(x):
        th = x[4]
        return np.array(
            [
                [0.0, 0.0],
                [0.0, 0.0],
                [-sin(th) / mass, 0.0],
                [cos(th) / mass, 0.0],
                [0.0, 0.0],
                [0.0, 1.0 / inertia],
            ],
            dtype=object if isinstance(th, (Dual, HyperDual)) else float,
        )

    return ControlAffineSystem(
        n=6, m=2, drift=drift, input_map=input_map, position_dims=2,
        name=SystemKind.PLANAR_DRONE.value,
    )


def affine(drift: VectorField, input_map: MatrixField, n: int, m: int, position_dims: int | None = None) -> ControlAffineSystem:
    return ControlAffineSystem(
        n=n, m=m, drift=drift, input_map=input_map,
        position_dims=n if position_dims is None else position_dims,
    )
