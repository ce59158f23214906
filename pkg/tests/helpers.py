# tests/helpers.py
from __future__ import annotations

import numpy as np

from models.barrier import LieData
from schemas.params import ClassK, GateParams, PenaltyParams
from schemas.scenario import FilterConfig, FilterKind


def make_cfg(kind: FilterKind = FilterKind.PENALTY, weight=None, alpha0: float = 1.0, **kw) -> FilterConfig:
    fields = dict(
        kind=kind,
        classk=ClassK(alpha0=alpha0),
        gate=kw.pop("gate", GateParams(epsilon=0.1, delta=1.5)),
        penalty=kw.pop("penalty", PenaltyParams(delta=1.5, mu=1.0)),
    )
    if weight is not None:
        fields["weight"] = np.asarray(weight, dtype=float).tolist()
    return FilterConfig(**fields, **kw)


def lie(c: float, a) -> LieData:
    return LieData(c_val=c, a_row=np.asarray(a, dtype=float))


def random_spd(rng: np.random.Generator, m: int = 2) -> np.ndarray:
    B = rng.uniform(-1.0, 1.0, size=(m, m))
    W = B @ B.T + 0.5 * np.eye(m)
    return 0.5 * (W + W.T)


def random_row(rng: np.random.Generator, m: int = 2, min_norm: float = 0.1) -> np.ndarray:
    while True:
        a = rng.uniform(-2.0, 2.0, size=m)
        if np.linalg.norm(a) >= min_norm:
            return a
