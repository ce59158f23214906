# models/nominal.py
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def nominal_proportional(x, x_d, k: float):
    """u₀ = −k(x − x_d)."""
    return (x - x_d) * (-k)


@dataclass(frozen=True)
class ProportionalNominal:
    goal: np.ndarray = field(repr=True)
    k: float

    def __post_init__(self):
        g = np.asarray(self.goal, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "goal", g)

    def __call__(self, x):
        return nominal_proportional(x, self.goal, self.k)
