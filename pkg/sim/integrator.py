# sim/integrator.py
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from errors import NonFiniteState

Derivative = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(
    derivative: Derivative,
    t: float,
    x: np.ndarray,
    dt: float,
    k1: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Classical fourth-order Runge–Kutta step. `k1` may be passed in when the
    caller already evaluated the field at (t, x)."""
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    x = np.asarray(x, dtype=float)
    half = 0.5 * dt
    k1 = derivative(t, x) if k1 is None else np.asarray(k1, dtype=float)
    k2 = derivative(t + half, x + half * k1)
    k3 = derivative(t + half, x + half * k2)
    k4 = derivative(t + dt, x + dt * k3)
    x_next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(x_next)):
        raise NonFiniteState(f"state became non-finite after step at t={t:.6f}: {x_next.tolist()}")
    return x_next
