# filters/pipeline.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from filters.closed_form import FilterOutput, apply_filter
from models.barrier import Barrier, barrier_eval, lie_derivatives
from models.nominal import ProportionalNominal
from models.systems import ControlAffineSystem, single_integrator
from schemas.scenario import FilterConfig, Scenario


def evaluate_filter(
    cfg: FilterConfig,
    sys: ControlAffineSystem,
    barriers: Sequence[Barrier],
    nominal: ProportionalNominal,
    x,
) -> FilterOutput:
    """Barrier values, Lie data and u₀ at x, then the configured filter."""
    pos = x[: sys.position_dims]
    u0 = nominal(pos)
    hs = [barrier_eval(b, pos) for b in barriers]
    lies = [lie_derivatives(sys, b, x) for b in barriers]
    return apply_filter(cfg, lies, hs, u0)


@dataclass(frozen=True)
class SafetyStack:
    """Everything needed to evaluate u*(p) on the planar velocity-command layer."""

    cfg: FilterConfig
    system: ControlAffineSystem
    barriers: Tuple[Barrier, ...]
    nominal: ProportionalNominal

    @classmethod
    def from_scenario(cls, sc: Scenario, cfg: FilterConfig | None = None) -> "SafetyStack":
        return cls(
            cfg=cfg or sc.filter,
            system=single_integrator(2),
            barriers=tuple(Barrier(o) for o in sc.obstacles),
            nominal=ProportionalNominal(goal=np.asarray(sc.goal, dtype=float), k=sc.gains.k),
        )

    @property
    def barrier(self) -> Barrier:
        return self.barriers[0]

    def evaluate(self, pos) -> FilterOutput:
        return evaluate_filter(self.cfg, self.system, self.barriers, self.nominal, pos)

    def barrier_values(self, pos) -> np.ndarray:
        return np.array([barrier_eval(b, pos) for b in self.barriers], dtype=float)
