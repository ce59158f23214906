# autodiff/jacobian.py
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from autodiff.dual import directional_of, jacobian_of, primal, seed_direction, seed_jacobian
from config import settings
from errors import NotDifferentiable
from filters.pipeline import evaluate_filter
from models.barrier import Barrier
from models.nominal import ProportionalNominal
from models.systems import ControlAffineSystem
from schemas.scenario import FilterConfig


@dataclass(frozen=True)
class JacobianResult:
    matrix: np.ndarray   # m×n, ∂u*/∂x
    valid: bool          # false on a transition join, where one-sided derivatives differ


def require_smooth(cfg: FilterConfig) -> None:
    if not cfg.smooth:
        raise NotDifferentiable(
            f"{cfg.kind.value} is only Lipschitz; differentiate Penalty or StabilizedPenalty"
        )


def near_join(cfg: FilterConfig, h: float, sigma: float, snap_tol: float = settings.SNAP_TOL) -> bool:
    p = cfg.penalty
    return any(abs(h - j) < snap_tol for j in (0.0, p.h_window.tau)) or any(
        abs(sigma - j) < snap_tol for j in (0.0, p.sigma_window.tau)
    )


def smooth_control(cfg: FilterConfig, sys: ControlAffineSystem, barrier: Barrier, nominal: ProportionalNominal, x):
    """u*(x) for any number type; the map every derivative below differentiates."""
    require_smooth(cfg)
    return evaluate_filter(cfg, sys, (barrier,), nominal, x)


def filter_jacobian(
    cfg: FilterConfig,
    sys: ControlAffineSystem,
    barrier: Barrier,
    nominal: ProportionalNominal,
    x,
    snap_tol: float = settings.SNAP_TOL,
) -> JacobianResult:
    x = np.asarray(x, dtype=float)
    out = smooth_control(cfg, sys, barrier, nominal, seed_jacobian(x))
    matrix = jacobian_of(out.u_star, x.size)
    valid = bool(np.all(np.isfinite(matrix))) and not near_join(
        cfg, primal(out.h), primal(out.sigma), snap_tol
    )
    return JacobianResult(matrix=matrix, valid=valid)


def feedforward_term(
    cfg: FilterConfig,
    sys: ControlAffineSystem,
    barrier: Barrier,
    nominal: ProportionalNominal,
    x,
    xdot,
) -> np.ndarray:
    """(∂u*/∂x)ẋ from one directional pass."""
    out = smooth_control(cfg, sys, barrier, nominal, seed_direction(x, xdot))
    return directional_of(out.u_star)
