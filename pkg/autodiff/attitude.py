# autodiff/attitude.py
"""
Outer-loop references for the planar drone tracking u*(x).

    a_d   = −k_v(ẋ − u*(x)) + (∂u*/∂x)ẋ
    θ_d   = atan2(−a_d,x , a_d,y + g_v)
    ẍ     = ‖a_d + g_v e_y‖(−sin θ, cos θ) − g_v e_y      (thrust F = m‖a_d + g_v e_y‖)
    ȧ_d   = −k_v(ẍ − (∂u*/∂x)ẋ) + D²u*[ẋ, ẋ] + (∂u*/∂x)ẍ

ẍ is the acceleration the commanded thrust produces at the current attitude
θ; without θ the attitude is taken to be on its reference, so ẍ = a_d.
One HyperDual pass seeded (ẋ, ẋ) yields u*, (∂u*/∂x)ẋ and D²u*[ẋ, ẋ]; one
Dual pass seeded ẍ yields (∂u*/∂x)ẍ.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from autodiff.dual import atan2, hyper_parts, primal, seed_hyper
from autodiff.jacobian import feedforward_term, smooth_control
from config import settings
from errors import DegenerateThrust
from models.barrier import Barrier
from models.nominal import ProportionalNominal
from models.systems import ControlAffineSystem
from schemas.scenario import FilterConfig, GainSet


@dataclass(frozen=True)
class AttitudeReference:
    u_star: np.ndarray
    jv: np.ndarray          # (∂u*/∂x)ẋ
    a_d: np.ndarray
    a_d_rate: np.ndarray
    theta_d: float
    theta_rate_d: float


def desired_attitude(a_d, g_v: float, tol: float = settings.THRUST_TOL):
    y = -a_d[0]
    x = a_d[1] + g_v
    if abs(primal(y)) < tol and abs(primal(x)) < tol:
        raise DegenerateThrust(f"a_d + g_v e_y = ({primal(-y):.3e}, {primal(x):.3e}) leaves no thrust direction")
    return atan2(y, x)


def thrust(a_d, g_v: float, mass: float) -> float:
    """F = m‖a_d + g_v e_y‖."""
    return mass * float(np.hypot(a_d[0], a_d[1] + g_v))


def thrust_acceleration(a_d, theta: float, g_v: float) -> np.ndarray:
    """ẍ produced by F = m‖a_d + g_v e_y‖ at attitude θ."""
    f = float(np.hypot(a_d[0], a_d[1] + g_v))
    return np.array([-f * np.sin(theta), f * np.cos(theta) - g_v])


def attitude_rate(a_d, a_d_rate, g_v: float) -> float:
    ax, ay = float(a_d[0]), float(a_d[1]) + g_v
    return (ax * float(a_d_rate[1]) - float(a_d_rate[0]) * ay) / (ax * ax + ay * ay)


def attitude_reference(
    cfg: FilterConfig,
    sys: ControlAffineSystem,
    barrier: Barrier,
    nominal: ProportionalNominal,
    gains: GainSet,
    x,
    xdot,
    theta: Optional[float] = None,
) -> AttitudeReference:
    x = np.asarray(x, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    out = smooth_control(cfg, sys, barrier, nominal, seed_hyper(x, xdot, xdot))
    u_star, jv, _, d2 = hyper_parts(out.u_star)

    a_d = -gains.k_v * (xdot - u_star) + jv
    xddot = a_d if theta is None else thrust_acceleration(a_d, theta, gains.gravity)
    ja = feedforward_term(cfg, sys, barrier, nominal, x, xddot)
    a_d_rate = -gains.k_v * (xddot - jv) + d2 + ja

    theta_d = float(desired_attitude(a_d, gains.gravity))
    return AttitudeReference(
        u_star=u_star,
        jv=jv,
        a_d=a_d,
        a_d_rate=a_d_rate,
        theta_d=theta_d,
        theta_rate_d=attitude_rate(a_d, a_d_rate, gains.gravity),
    )


def desired_attitude_rate(
    cfg: FilterConfig,
    sys: ControlAffineSystem,
    barrier: Barrier,
    nominal: ProportionalNominal,
    x,
    xdot,
    gains: GainSet,
) -> float:
    return attitude_reference(cfg, sys, barrier, nominal, gains, x, xdot).theta_rate_d
