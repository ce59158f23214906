# sim/runners.py
"""
Closed-loop runners. The safety filter always acts on the planar position p:

    SingleIntegrator  ṗ = u*(p)
    DoubleIntegrator  p̈ = −k_p(ṗ − u*(p)) [+ (∂u*/∂p)ṗ]
    PlanarDrone       outer loop a_d, thrust/attitude extraction, PD attitude loop

Controls are re-evaluated at every RK4 stage. Only the evaluation at a step
boundary commits: it updates the join hold and is what the log records.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from autodiff.attitude import attitude_rate, attitude_reference, desired_attitude, thrust
from autodiff.jacobian import feedforward_term, near_join
from errors import SafetyFilterError, SimulationError
from filters.closed_form import FilterOutput
from filters.pipeline import SafetyStack
from models.systems import (
    ControlAffineSystem,
    SystemKind,
    double_integrator,
    planar_drone,
    single_integrator,
)
from schemas.scenario import Scenario
from sim.integrator import rk4_step
from sim.metrics import gate_releases
from sim.trajectory import TrajectoryLog

logger = logging.getLogger(__name__)


class ControlStep(NamedTuple):
    u: np.ndarray          # input applied to the plant
    u_star: np.ndarray     # filtered velocity command at the current position
    tracking_err: float    # ‖ṗ − u*(p)‖, NaN for the single integrator
    out: FilterOutput      # filter evaluation the step was built from


# (state, commit) -> control
ControlLaw = Callable[[np.ndarray, bool], ControlStep]


@dataclass
class _JoinHold:
    """Last derivative data committed away from a transition join."""

    value: Optional[object] = None
    held: int = 0

    def update(self, at_join: bool, fresh, commit: bool = True):
        if at_join and self.value is not None:
            if commit:
                self.held += 1
            return self.value
        if commit and not at_join:
            self.value = fresh
        return fresh


@dataclass
class ClosedLoop:
    sc: Scenario
    plant: ControlAffineSystem
    stack: SafetyStack
    law: ControlLaw
    hold: _JoinHold

    def field(self, x: np.ndarray) -> np.ndarray:
        """Closed-loop vector field, without committing to the hold."""
        return self.plant.dynamics(x, self.law(x, False).u)


def _wrap(angle: float) -> float:
    return math.atan2(math.sin(angle), math.cos(angle))


# ---------- control laws ----------
def _single_integrator_law(sc: Scenario, stack: SafetyStack, hold: _JoinHold) -> ControlLaw:
    def law(x: np.ndarray, commit: bool) -> ControlStep:
        out = stack.evaluate(x)
        u = np.asarray(out.u_star, dtype=float)
        return ControlStep(u=u, u_star=u, tracking_err=math.nan, out=out)

    return law


def _double_integrator_law(sc: Scenario, stack: SafetyStack, hold: _JoinHold) -> ControlLaw:
    k_p = sc.gains.k_p

    def law(x: np.ndarray, commit: bool) -> ControlStep:
        pos, vel = x[:2], x[2:]
        out = stack.evaluate(pos)
        us = np.asarray(out.u_star, dtype=float)
        u = -k_p * (vel - us)
        if sc.feedforward:
            jv = feedforward_term(stack.cfg, stack.system, stack.barrier, stack.nominal, pos, vel)
            u = u + hold.update(near_join(stack.cfg, float(out.h), float(out.sigma)), jv, commit)
        return ControlStep(u=u, u_star=us, tracking_err=float(np.linalg.norm(vel - us)), out=out)

    return law


@dataclass
class _OuterLoop:
    a_d: np.ndarray
    theta_d: float
    theta_rate_d: float
    u_star: np.ndarray
    out: FilterOutput


def _drone_outer_loop(
    sc: Scenario, stack: SafetyStack, hold: _JoinHold, pos, vel, theta: float, commit: bool
) -> _OuterLoop:
    g = sc.gains
    out = stack.evaluate(pos)
    if not sc.feedforward:
        us = np.asarray(out.u_star, dtype=float)
        a_d = -g.k_v * (vel - us)
        return _OuterLoop(
            a_d=a_d, theta_d=float(desired_attitude(a_d, g.gravity)), theta_rate_d=0.0, u_star=us, out=out
        )

    ref = attitude_reference(stack.cfg, stack.system, stack.barrier, stack.nominal, g, pos, vel, theta=theta)
    if not near_join(stack.cfg, float(out.h), float(out.sigma)):
        hold.update(False, (ref.jv, ref.a_d_rate), commit)
        return _OuterLoop(
            a_d=ref.a_d, theta_d=ref.theta_d, theta_rate_d=ref.theta_rate_d, u_star=ref.u_star, out=out
        )

    jv, a_d_rate = hold.update(True, (ref.jv, ref.a_d_rate), commit)
    a_d = -g.k_v * (vel - ref.u_star) + jv
    return _OuterLoop(
        a_d=a_d,
        theta_d=float(desired_attitude(a_d, g.gravity)),
        theta_rate_d=attitude_rate(a_d, a_d_rate, g.gravity),
        u_star=ref.u_star,
        out=out,
    )


def _planar_drone_law(sc: Scenario, stack: SafetyStack, hold: _JoinHold) -> ControlLaw:
    g = sc.gains

    def law(x: np.ndarray, commit: bool) -> ControlStep:
        pos, vel, theta, omega = x[:2], x[2:4], float(x[4]), float(x[5])
        outer = _drone_outer_loop(sc, stack, hold, pos, vel, theta, commit)
        force = thrust(outer.a_d, g.gravity, g.mass)
        torque = -g.inertia * (g.k_theta * _wrap(theta - outer.theta_d) + g.k_omega * (omega - outer.theta_rate_d))
        return ControlStep(
            u=np.array([force, torque]),
            u_star=outer.u_star,
            tracking_err=float(np.linalg.norm(vel - outer.u_star)),
            out=outer.out,
        )

    return law


_PLANTS = {
    SystemKind.SINGLE_INTEGRATOR: (lambda sc: single_integrator(2), _single_integrator_law),
    SystemKind.DOUBLE_INTEGRATOR: (lambda sc: double_integrator(2), _double_integrator_law),
    SystemKind.PLANAR_DRONE: (
        lambda sc: planar_drone(sc.gains.mass, sc.gains.inertia, sc.gains.gravity),
        _planar_drone_law,
    ),
}


def closed_loop(sc: Scenario) -> ClosedLoop:
    make_plant, make_law = _PLANTS[sc.system]
    stack = SafetyStack.from_scenario(sc)
    hold = _JoinHold()
    return ClosedLoop(sc=sc, plant=make_plant(sc), stack=stack, law=make_law(sc, stack, hold), hold=hold)


# ---------- simulation ----------
def _simulate(loop: ClosedLoop) -> TrajectoryLog:
    sc, plant, stack = loop.sc, loop.plant, loop.stack
    steps = sc.steps
    dt = sc.dt
    K = steps + 1

    times = np.arange(K) * dt
    states = np.empty((K, plant.n))
    controls = np.empty((K, plant.m))
    h = np.empty((K, len(stack.barriers)))
    sigma = np.empty(K)
    gate_or_psi = np.empty(K)
    correction_norm = np.empty(K)
    tracking_err = np.empty(K)
    u_star = np.empty((K, 2))

    x = np.asarray(sc.x0, dtype=float)

    def field_at(_t: float, xs: np.ndarray) -> np.ndarray:
        return loop.field(xs)

    for k in range(K):
        t = float(times[k])
        try:
            pos = x[: plant.position_dims]
            step = loop.law(x, True)
            states[k] = x
            controls[k] = step.u
            h[k] = stack.barrier_values(pos)
            sigma[k] = float(step.out.sigma)
            gate_or_psi[k] = float(step.out.gate_or_psi)
            correction_norm[k] = step.out.correction_norm
            tracking_err[k] = step.tracking_err
            u_star[k] = step.u_star
            if k < steps:
                x = rk4_step(field_at, t, x, dt, k1=plant.dynamics(x, step.u))
        except SimulationError:
            raise
        except SafetyFilterError as e:
            raise SimulationError(t, e) from e

    if loop.hold.held:
        logger.warning("%s: held feedforward data at %d transition-join evaluations", sc.name, loop.hold.held)
    return TrajectoryLog(
        times=times,
        states=states,
        controls=controls,
        h=h,
        sigma=sigma,
        gate_or_psi=gate_or_psi,
        correction_norm=correction_norm,
        tracking_err=tracking_err,
        goal=np.asarray(sc.goal, dtype=float),
        u_star=u_star,
    )


def _run(sc: Scenario, system: SystemKind, name: str) -> TrajectoryLog:
    if sc.system != system:
        raise ValueError(f"{name} got a {sc.system.value} scenario")
    return _simulate(closed_loop(sc))


def run_single_integrator(sc: Scenario) -> TrajectoryLog:
    return _run(sc, SystemKind.SINGLE_INTEGRATOR, "run_single_integrator")


def run_double_integrator(sc: Scenario) -> TrajectoryLog:
    return _run(sc, SystemKind.DOUBLE_INTEGRATOR, "run_double_integrator")


def run_planar_drone(sc: Scenario) -> TrajectoryLog:
    return _run(sc, SystemKind.PLANAR_DRONE, "run_planar_drone")


def run_scenario(sc: Scenario) -> TrajectoryLog:
    logger.info("running %s (%s, %s, %d steps of %g)", sc.name, sc.system.value, sc.filter.kind.value, sc.steps, sc.dt)
    log = _simulate(closed_loop(sc))
    released = gate_releases(log)
    if released:
        logger.warning("%s: gate released with sigma < 0 at %d steps", sc.name, released)
    logger.info("finished %s: min h %.3e", sc.name, float(log.min_h_per_step.min()))
    return log
