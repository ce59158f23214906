# schemas/params.py
from __future__ import annotations

from enum import Enum
from functools import cached_property

from pydantic import BaseModel, Field, model_validator

from config import settings

_FROZEN = {"extra": "forbid", "frozen": True}


class TransitionShape(str, Enum):
    CUBIC = "Cubic"       # 1 − 3s² + 2s³, C¹ at the joins
    QUINTIC = "Quintic"   # 1 − 10s³ + 15s⁴ − 6s⁵, C² at the joins


class ClassKForm(str, Enum):
    LINEAR = "Linear"


# -------- transition window φ_τ --------
class TransitionParams(BaseModel):
    tau: float = Field(..., gt=0, description="window width")
    shape: TransitionShape = TransitionShape.CUBIC

    model_config = _FROZEN


# -------- perception gate γ --------
class GateParams(BaseModel):
    epsilon: float = Field(..., gt=0, description="inner threshold (length)")
    delta: float = Field(..., gt=0, description="sensing range (length)")
    shape: TransitionShape = TransitionShape.CUBIC

    model_config = _FROZEN

    @model_validator(mode="after")
    def _check_band(self):
        if not self.epsilon < self.delta:
            raise ValueError(
                f"GateParams: delta must exceed epsilon (epsilon={self.epsilon}, delta={self.delta})"
            )
        return self

    @cached_property
    def window(self) -> TransitionParams:
        return TransitionParams(tau=self.delta - self.epsilon, shape=self.shape)


# -------- class-K function α --------
class ClassK(BaseModel):
    alpha0: float = Field(..., gt=0, description="rate coefficient (1/time)")
    form: ClassKForm = ClassKForm.LINEAR

    model_config = _FROZEN


# -------- penalty ψ --------
class PenaltyParams(BaseModel):
    delta: float = Field(..., gt=0, description="perception range (length)")
    mu: float = Field(..., gt=0, description="margin on σ")
    psi_max: float = Field(settings.PSI_MAX, gt=0, description="saturation ceiling")
    shape: TransitionShape = TransitionShape.CUBIC

    model_config = _FROZEN

    @cached_property
    def h_window(self) -> TransitionParams:
        return TransitionParams(tau=self.delta, shape=self.shape)

    @cached_property
    def sigma_window(self) -> TransitionParams:
        return TransitionParams(tau=self.mu, shape=self.shape)
