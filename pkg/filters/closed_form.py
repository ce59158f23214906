# filters/closed_form.py
"""
Closed-form safety filters.

    gated / classical QP   u* = u₀ − (σ/‖a‖_{W⁻¹}) ν          when γ(h)σ < 0
    penalty                u* = u₀ − ψσ/(1 + ψ‖a‖_{W⁻¹}) ν
    stabilized penalty     u* = u₀ − φ_δ(h)φ_μ(σ) σ/‖a‖_{W⁻¹} ν
    multi-obstacle penalty (W + Σψᵢaᵢᵀaᵢ)u = Wu₀ − Σψᵢ(cᵢ + αᵢ)aᵢᵀ

with σ = c + a·u₀ + α(h), ν = W⁻¹aᵀ and ‖a‖_{W⁻¹} = aW⁻¹aᵀ. ψ is frozen at
the nominal σ. The single-obstacle filters are generic over Dual/HyperDual
inputs; the multi-obstacle solve is float only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, List, Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from autodiff.dual import primal
from errors import SolveFailure
from filters.weights import nu
from models.barrier import LieData, sigma_eval
from schemas.scenario import FilterConfig, FilterKind
from utils.scalarfuncs import classk_eval, gate_eval, psi_eval, transition_eval


@dataclass(frozen=True)
class FilterOutput:
    u_star: Any
    h: Any
    sigma: Any
    gate_or_psi: Any
    correction: Any
    constraint_active: bool
    residual: Any   # c + a·u* + α(h)

    @property
    def correction_norm(self) -> float:
        return float(np.linalg.norm([primal(c) for c in self.correction]))


def _zeros(u0) -> np.ndarray:
    return np.zeros(len(u0))


def _finish(lie: LieData, h, u0, sigma, alpha_h, gate_or_psi, correction) -> FilterOutput:
    u_star = u0 + correction
    return FilterOutput(
        u_star=u_star,
        h=h,
        sigma=sigma,
        gate_or_psi=gate_or_psi,
        correction=correction,
        constraint_active=any(primal(c) != 0.0 for c in correction),
        residual=lie.c_val + lie.a_row @ u_star + alpha_h,
    )


def _prepare(cfg: FilterConfig, lie: LieData, h, u0):
    alpha_h = classk_eval(h, cfg.classk)
    sigma = sigma_eval(lie, u0, alpha_h)
    nu_vec = nu(lie.a_row, cfg.weight_matrix)
    wn = lie.a_row @ nu_vec
    return alpha_h, sigma, nu_vec, wn


def _penalty_correction(psi, sigma, wn, nu_vec, u0):
    if psi == 0.0:
        return _zeros(u0)
    return nu_vec * (-(psi * sigma / (1.0 + psi * wn)))


# ---------- gated / classical ----------
def gated_filter(cfg: FilterConfig, lie: LieData, h, u0) -> FilterOutput:
    alpha_h, sigma, nu_vec, wn = _prepare(cfg, lie, h, u0)
    gamma = 1.0 if cfg.kind == FilterKind.CLASSICAL_QP else gate_eval(h, cfg.gate)
    if primal(gamma) * primal(sigma) < 0.0:
        correction = nu_vec * (-(sigma / wn))
    else:
        correction = _zeros(u0)
    return _finish(lie, h, u0, sigma, alpha_h, gamma, correction)


# ---------- penalty ----------
def penalty_filter(cfg: FilterConfig, lie: LieData, h, u0) -> FilterOutput:
    alpha_h, sigma, nu_vec, wn = _prepare(cfg, lie, h, u0)
    psi = psi_eval(h, sigma, wn, cfg.penalty)
    correction = _penalty_correction(psi, sigma, wn, nu_vec, u0)
    return _finish(lie, h, u0, sigma, alpha_h, psi, correction)


def stabilized_penalty_filter(cfg: FilterConfig, lie: LieData, h, u0) -> FilterOutput:
    alpha_h, sigma, nu_vec, wn = _prepare(cfg, lie, h, u0)
    p = cfg.penalty
    blend = transition_eval(h, p.h_window) * transition_eval(sigma, p.sigma_window)
    if blend == 0.0:
        correction = _zeros(u0)
    else:
        correction = nu_vec * (-(blend * sigma / wn))
    psi = psi_eval(h, sigma, wn, p)
    return _finish(lie, h, u0, sigma, alpha_h, psi, correction)


# ---------- several obstacles ----------
def multi_penalty_filter(
    cfg: FilterConfig, lies: Sequence[LieData], hs: Sequence[float], u0
) -> FilterOutput:
    if not lies or len(lies) != len(hs):
        raise ValueError("multi_penalty_filter needs one LieData per barrier value")
    u0 = np.asarray(u0, dtype=float)
    W = cfg.weight_matrix

    terms: List[tuple] = []
    for lie, h in zip(lies, hs):
        alpha_h, sigma, nu_vec, wn = _prepare(cfg, lie, h, u0)
        psi = psi_eval(h, sigma, wn, cfg.penalty)
        terms.append((lie, h, alpha_h, sigma, nu_vec, wn, psi))

    active = [t for t in terms if t[6] > 0.0]
    if not active:
        correction = _zeros(u0)
    elif len(active) == 1:
        _, _, _, sigma, nu_vec, wn, psi = active[0]
        correction = _penalty_correction(psi, sigma, wn, nu_vec, u0)
    else:
        A = W.W.copy()
        rhs = W.W @ u0
        for lie, _, alpha_h, _, _, _, psi in active:
            a = np.asarray(lie.a_row, dtype=float)
            A += psi * np.outer(a, a)
            rhs -= psi * (float(lie.c_val) + alpha_h) * a
        try:
            factor = cho_factor(A)
            u = cho_solve(factor, rhs)
        except LinAlgError as e:
            raise SolveFailure(f"penalty system is not positive definite: {e}") from e
        if not np.all(np.isfinite(u)):
            raise SolveFailure("penalty system produced a non-finite control")
        correction = u - u0

    # diagnostics follow the closest obstacle
    lie, h, alpha_h, sigma, _, _, psi = min(terms, key=lambda t: t[1])
    return _finish(lie, h, u0, sigma, alpha_h, psi, correction)


def apply_filter(cfg: FilterConfig, lies: Sequence[LieData], hs: Sequence, u0) -> FilterOutput:
    if len(lies) > 1:
        return multi_penalty_filter(cfg, lies, hs, u0)
    lie, h = lies[0], hs[0]
    if cfg.kind == FilterKind.PENALTY:
        return penalty_filter(cfg, lie, h, u0)
    if cfg.kind == FilterKind.STABILIZED_PENALTY:
        return stabilized_penalty_filter(cfg, lie, h, u0)
    return gated_filter(cfg, lie, h, u0)


def hdot_under_filter(lie: LieData, u_star):
    """ḣ = c + a·u* along the filtered closed loop."""
    return lie.c_val + lie.a_row @ u_star
