# tests/conftest.py
from __future__ import annotations

import numpy as np
import pytest

from filters.pipeline import SafetyStack
from models.barrier import Barrier
from models.nominal import ProportionalNominal
from models.systems import single_integrator
from schemas.scenario import FilterConfig, FilterKind, Obstacle
from tests.helpers import make_cfg
from utils.scenario_io import load_scenario


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def si():
    return single_integrator(2)


@pytest.fixture
def unit_barrier() -> Barrier:
    return Barrier(Obstacle(center=[0.0, 0.0], radius=1.0, margin=0.2))


@pytest.fixture
def nominal() -> ProportionalNominal:
    return ProportionalNominal(goal=np.array([4.0, 0.0]), k=0.5)


@pytest.fixture
def penalty_cfg() -> FilterConfig:
    return make_cfg(FilterKind.PENALTY)


@pytest.fixture
def bundled():
    """Load a bundled scenario by name, with optional overrides."""

    def _load(name: str, *overrides: str, **kw):
        return load_scenario(name, overrides, **kw)

    return _load


@pytest.fixture
def stack_for(bundled):
    def _stack(name: str, *overrides: str) -> SafetyStack:
        return SafetyStack.from_scenario(bundled(name, *overrides))

    return _stack
