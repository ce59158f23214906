# schemas/report.py
from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from schemas.scenario import FilterKind, Scenario


class FilterOutputOut(BaseModel):
    u_star: List[float]
    h: float
    sigma: float
    gate_or_psi: float
    correction: List[float]
    correction_norm: float
    constraint_active: bool
    residual: float = Field(..., description="c + a·u* + α(h) for the critical obstacle")

    @classmethod
    def from_output(cls, out) -> "FilterOutputOut":
        return cls(
            u_star=[float(v) for v in out.u_star],
            h=float(out.h),
            sigma=float(out.sigma),
            gate_or_psi=float(out.gate_or_psi),
            correction=[float(v) for v in out.correction],
            correction_norm=out.correction_norm,
            constraint_active=bool(out.constraint_active),
            residual=float(out.residual),
        )


class Metrics(BaseModel):
    min_h: float
    goal_error_final: float
    velocity_tracking_rms: Optional[float] = None   # single integrator has none
    control_rate_max: float
    control_accel_max: float
    violations: int
    recovery_time: Optional[float] = None           # first t with every h_i ≥ 0
    gate_release_negative_sigma: int


class Verdict(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class RunReport(BaseModel):
    scenario: Scenario
    metrics: Metrics
    verdicts: List[Verdict]
    trajectory_path: str
    report_path: str

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


class KindSummary(BaseModel):
    kind: FilterKind
    metrics: Metrics
    verdicts: List[Verdict]


class CompareReport(BaseModel):
    scenario: Scenario
    kinds: List[FilterKind]
    results: Dict[str, KindSummary]
    comparison_csv: str
    comparison_json: str

    @property
    def passed(self) -> bool:
        return all(v.passed for r in self.results.values() for v in r.verdicts)
