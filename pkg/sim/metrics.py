# sim/metrics.py
from __future__ import annotations

from typing import List, Optional

import numpy as np

from config import settings
from schemas.report import Metrics, Verdict
from sim.trajectory import TrajectoryLog


def _control_rate_max(controls: np.ndarray, dt: float) -> float:
    if len(controls) < 2 or dt <= 0.0:
        return 0.0
    return float(np.max(np.linalg.norm(np.diff(controls, axis=0), axis=1)) / dt)


def _control_accel_max(controls: np.ndarray, dt: float) -> float:
    if len(controls) < 3 or dt <= 0.0:
        return 0.0
    return float(np.max(np.linalg.norm(np.diff(controls, n=2, axis=0), axis=1)) / (dt * dt))


def _recovery_time(log: TrajectoryLog) -> Optional[float]:
    safe = np.flatnonzero(log.min_h_per_step >= 0.0)
    return float(log.times[safe[0]]) if safe.size else None


def gate_releases(log: TrajectoryLog) -> int:
    """Steps where the gate (or ψ) drops to zero while σ < 0."""
    g = log.gate_or_psi
    released = (g[:-1] > 0.0) & (g[1:] == 0.0) & (log.sigma[1:] < 0.0)
    return int(np.count_nonzero(released))


def compute_metrics(log: TrajectoryLog, inv_tol: float = settings.INV_TOL) -> Metrics:
    if len(log) == 0:
        raise ValueError("compute_metrics needs a non-empty log")
    min_h_step = log.min_h_per_step
    pos = log.states[-1, : len(log.goal)]
    tracking = log.tracking_err[~np.isnan(log.tracking_err)]
    return Metrics(
        min_h=float(min_h_step.min()),
        goal_error_final=float(np.linalg.norm(pos - log.goal)),
        velocity_tracking_rms=float(np.sqrt(np.mean(tracking**2))) if tracking.size else None,
        control_rate_max=_control_rate_max(log.controls, log.dt),
        control_accel_max=_control_accel_max(log.controls, log.dt),
        violations=int(np.count_nonzero(min_h_step < -inv_tol)),
        recovery_time=_recovery_time(log),
        gate_release_negative_sigma=gate_releases(log),
    )


def compute_verdicts(log: TrajectoryLog, inv_tol: float = settings.INV_TOL) -> List[Verdict]:
    """Invariant checks that need nothing but the logged trajectory."""
    m = compute_metrics(log, inv_tol)
    numeric = [log.states, log.controls, log.h, log.sigma, log.gate_or_psi, log.correction_norm]
    finite = all(bool(np.all(np.isfinite(a))) for a in numeric)
    verdicts = [Verdict(name="finite", passed=finite, detail="" if finite else "non-finite entries in log")]

    min_h_step = log.min_h_per_step
    if min_h_step[0] >= 0.0:
        ok = m.violations == 0 and m.min_h >= -inv_tol
        verdicts.append(
            Verdict(
                name="forward_invariance",
                passed=ok,
                detail=f"min_h={m.min_h:.3e}, violations={m.violations}",
            )
        )
    else:
        if m.recovery_time is None:
            verdicts.append(Verdict(name="set_recovery", passed=False, detail="never reached h >= 0"))
        else:
            k = int(np.flatnonzero(log.times >= m.recovery_time)[0])
            after = int(np.count_nonzero(min_h_step[k:] < -inv_tol))
            verdicts.append(
                Verdict(
                    name="set_recovery",
                    passed=after == 0,
                    detail=f"h0={min_h_step[0]:.3e}, recovered at t={m.recovery_time:.6f}, re-violations={after}",
                )
            )
    return verdicts
