# errors.py
from __future__ import annotations


class SafetyFilterError(Exception):
    """Base error. `exit_code` is what the CLI terminates with."""

    exit_code: int = 3


# ---------- configuration (exit 2) ----------
class ConfigError(SafetyFilterError):
    exit_code = 2


# ---------- runtime (exit 3) ----------
class DegenerateGradient(SafetyFilterError):
    pass


class RelativeDegreeViolation(SafetyFilterError):
    pass


class SolveFailure(SafetyFilterError):
    pass


class NotDifferentiable(SafetyFilterError):
    pass


class DegenerateThrust(SafetyFilterError):
    pass


class NonFiniteState(SafetyFilterError):
    pass


class SimulationError(SafetyFilterError):
    def __init__(self, time: float, cause: SafetyFilterError):
        self.time = time
        self.cause = cause
        super().__init__(f"t={time:.6f}: {type(cause).__name__}: {cause}")
