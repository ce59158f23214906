# schemas/scenario.py
from __future__ import annotations

from enum import Enum
from functools import cached_property
from typing import List

from pydantic import BaseModel, Field, field_validator, model_validator

from config import settings
from filters.weights import WeightMatrix
from models.systems import STATE_DIM, SystemKind
from schemas.params import ClassK, GateParams, PenaltyParams

_STRICT = {"extra": "forbid", "frozen": True}


class FilterKind(str, Enum):
    CLASSICAL_QP = "ClassicalQP"
    GATED_QP = "GatedQP"
    PENALTY = "Penalty"
    STABILIZED_PENALTY = "StabilizedPenalty"


SMOOTH_KINDS = frozenset({FilterKind.PENALTY, FilterKind.STABILIZED_PENALTY})


# -------- Obstacle --------
class Obstacle(BaseModel):
    center: List[float] = Field(..., min_length=1, description="position (length)")
    radius: float = Field(..., gt=0, description="length")
    margin: float = Field(0.0, ge=0, description="security distance (length)")

    model_config = _STRICT


# -------- FilterConfig --------
class FilterConfig(BaseModel):
    kind: FilterKind = FilterKind.PENALTY
    weight: List[List[float]] = Field(default_factory=lambda: [[1.0, 0.0], [0.0, 1.0]])
    gate: GateParams = Field(default_factory=lambda: GateParams(epsilon=0.1, delta=1.5))
    classk: ClassK = Field(default_factory=lambda: ClassK(alpha0=1.0))
    penalty: PenaltyParams = Field(default_factory=lambda: PenaltyParams(delta=1.5, mu=1.0))

    model_config = _STRICT

    @field_validator("weight")
    @classmethod
    def _check_weight(cls, v: List[List[float]]) -> List[List[float]]:
        WeightMatrix.from_rows(v)  # raises with the failing WeightMatrix invariant
        return v

    @cached_property
    def weight_matrix(self) -> WeightMatrix:
        return WeightMatrix.from_rows(self.weight)

    @property
    def smooth(self) -> bool:
        return self.kind in SMOOTH_KINDS


# -------- GainSet --------
class GainSet(BaseModel):
    k: float = Field(1.0, gt=0, description="nominal proportional gain (1/time)")
    k_p: float = Field(1.0, gt=0, description="velocity-tracking gain, double integrator")
    k_v: float = Field(1.0, gt=0, description="outer-loop gain, planar drone")
    k_theta: float = Field(2.0, gt=0, description="attitude gain (1/time²)")
    k_omega: float = Field(2.0, gt=0, description="attitude-rate gain (1/time)")
    mass: float = Field(settings.DEFAULT_MASS, gt=0, description="kg")
    inertia: float = Field(settings.DEFAULT_INERTIA, gt=0, description="kg·m²")
    gravity: float = Field(settings.DEFAULT_GRAVITY, gt=0, description="m/s²")

    model_config = _STRICT


# -------- Scenario --------
class Scenario(BaseModel):
    name: str = Field("scenario", min_length=1)
    system: SystemKind
    obstacles: List[Obstacle] = Field(..., min_length=1)
    goal: List[float] = Field(..., min_length=2, max_length=2)
    x0: List[float]
    gains: GainSet = Field(default_factory=GainSet)
    filter: FilterConfig = Field(default_factory=FilterConfig)
    duration: float = Field(..., gt=0, description="time")
    dt: float = Field(settings.DEFAULT_DT, gt=0, description="time step")
    feedforward: bool = False

    model_config = _STRICT

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.duration < self.dt:
            raise ValueError(f"Scenario: duration ({self.duration}) must be at least dt ({self.dt})")
        n = STATE_DIM[self.system]
        if len(self.x0) != n:
            raise ValueError(f"Scenario: x0 has {len(self.x0)} entries, {self.system.value} needs {n}")
        for i, ob in enumerate(self.obstacles):
            if len(ob.center) != 2:
                raise ValueError(f"Obstacle {i}: center must be a 2-D position")
        if self.filter.weight_matrix.dim != 2:
            raise ValueError("FilterConfig: weight must be 2x2 (planar velocity command)")
        single_only = self.filter.kind in (
            FilterKind.CLASSICAL_QP, FilterKind.GATED_QP, FilterKind.STABILIZED_PENALTY
        )
        if single_only and len(self.obstacles) != 1:
            raise ValueError(
                f"FilterConfig: kind {self.filter.kind.value} handles exactly one obstacle; "
                "use Penalty for several"
            )
        if self.feedforward:
            if self.system == SystemKind.SINGLE_INTEGRATOR:
                raise ValueError("Scenario: feedforward applies to DoubleIntegrator and PlanarDrone only")
            if not self.filter.smooth:
                raise ValueError(
                    f"Scenario: feedforward requires a smooth filter (Penalty or StabilizedPenalty), "
                    f"got {self.filter.kind.value}"
                )
            if len(self.obstacles) != 1:
                raise ValueError("Scenario: feedforward differentiates a single-obstacle filter")
        return self

    @property
    def steps(self) -> int:
        return int(round(self.duration / self.dt))
