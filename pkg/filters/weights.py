# filters/weights.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from autodiff.dual import primal
from config import settings
from errors import RelativeDegreeViolation

SYMMETRY_TOL = 1e-12
INVERSE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric positive-definite W with its inverse cached. Compared by identity."""

    W: np.ndarray
    inv: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "WeightMatrix":
        W = np.asarray(rows, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1] or W.size == 0:
            raise ValueError(f"WeightMatrix: must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise ValueError("WeightMatrix: entries must be finite")
        if np.max(np.abs(W - W.T)) > SYMMETRY_TOL:
            raise ValueError("WeightMatrix: must be symmetric")
        if np.min(np.linalg.eigvalsh(W)) <= 0.0:
            raise ValueError("WeightMatrix: must be positive definite")
        inv = np.linalg.inv(W)
        if np.max(np.abs(W @ inv - np.eye(W.shape[0]))) > INVERSE_TOL:
            raise ValueError("WeightMatrix: too ill-conditioned to invert accurately")
        W.setflags(write=False)
        inv.setflags(write=False)
        return cls(W=W, inv=inv)

    @classmethod
    def identity(cls, m: int) -> "WeightMatrix":
        return cls.from_rows(np.eye(m))

    @property
    def dim(self) -> int:
        return self.W.shape[0]


def _check_relative_degree(a_row, a_tol: float) -> None:
    norm = float(np.sqrt(sum(primal(e) ** 2 for e in np.atleast_1d(a_row))))
    if not norm >= a_tol:
        raise RelativeDegreeViolation(f"‖L_g h‖ = {norm:.3e} below tolerance {a_tol:.1e}")


def nu(a_row, W: WeightMatrix, a_tol: float = settings.A_TOL):
    """ν = W⁻¹aᵀ."""
    _check_relative_degree(a_row, a_tol)
    return W.inv @ a_row


def wnorm(a_row, W: WeightMatrix, a_tol: float = settings.A_TOL):
    """‖a‖_{W⁻¹} := aW⁻¹aᵀ (quadratic form, not its square root)."""
    return a_row @ nu(a_row, W, a_tol)


def sherman_morrison_inverse(W: WeightMatrix, psi: float, a_row) -> np.ndarray:
    """(W + ψaᵀa)⁻¹ = W⁻¹ − ψW⁻¹aᵀaW⁻¹ / (1 + ψaW⁻¹aᵀ)."""
    if psi == 0.0:
        return W.inv.copy()
    a = np.asarray(a_row, dtype=float)
    v = W.inv @ a
    return W.inv - (psi / (1.0 + psi * (a @ v))) * np.outer(v, v)
