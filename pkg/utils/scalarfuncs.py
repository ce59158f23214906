# utils/scalarfuncs.py
"""
Smooth scalar building blocks: the transition window φ_τ, the perception
gate γ, the class-K rate α and the penalty ψ.

Every function accepts plain floats as well as Dual/HyperDual numbers, so
the same code path is differentiated by the autodiff layer.
"""
from __future__ import annotations

from autodiff.dual import polyval, primal
from schemas.params import (
    ClassK,
    GateParams,
    PenaltyParams,
    TransitionParams,
    TransitionShape,
)

# ascending coefficients in s = z/τ
_WINDOW = {
    TransitionShape.CUBIC: (1.0, 0.0, -3.0, 2.0),
    TransitionShape.QUINTIC: (1.0, 0.0, 0.0, -10.0, 15.0, -6.0),
}
_WINDOW_D1 = {
    TransitionShape.CUBIC: (0.0, -6.0, 6.0),
    TransitionShape.QUINTIC: (0.0, 0.0, -30.0, 60.0, -30.0),
}
_WINDOW_D2 = {
    TransitionShape.CUBIC: (-6.0, 12.0),
    TransitionShape.QUINTIC: (0.0, -60.0, 180.0, -120.0),
}


def _window(z, tau: float, shape: TransitionShape):
    if z <= 0.0:
        return 1.0
    if z >= tau:
        return 0.0
    return polyval(_WINDOW[shape], z / tau)


# ---------- transition φ_τ ----------
def transition_eval(z, p: TransitionParams):
    """1 for z ≤ 0, 0 for z ≥ τ, polynomial blend in between."""
    return _window(z, p.tau, p.shape)


def transition_deriv(z, p: TransitionParams):
    if z <= 0.0 or z >= p.tau:
        return 0.0
    return polyval(_WINDOW_D1[p.shape], z / p.tau) / p.tau


def transition_second_deriv(z, p: TransitionParams):
    # one-sided at the joins for the cubic shape; zero outside the band
    if z <= 0.0 or z >= p.tau:
        return 0.0
    return polyval(_WINDOW_D2[p.shape], z / p.tau) / (p.tau * p.tau)


# ---------- perception gate γ ----------
def gate_eval(h, p: GateParams):
    """γ(h) = φ(h − ε) over a window of width δ − ε: 1 for h ≤ ε, 0 for h ≥ δ."""
    return _window(h - p.epsilon, p.delta - p.epsilon, p.shape)


def gate_deriv(h, p: GateParams):
    return transition_deriv(h - p.epsilon, p.window)


# ---------- class-K α ----------
def classk_eval(h, k: ClassK):
    return k.alpha0 * h


# ---------- penalty ψ ----------
def psi_eval(
    h,
    sigma,
    a_wnorm,
    p: PenaltyParams,
    gate_tau_h: TransitionParams | None = None,
    gate_tau_sigma: TransitionParams | None = None,
):
    """
    ψ = φ_δ(h)φ_μ(σ) / (‖a‖_{W⁻¹}(1 − φ_δ(h)φ_μ(σ))), capped at psi_max.

    Windows default to widths (δ, μ). The cap replaces the divergence at
    h ≤ 0, σ ≤ 0 where the blend product reaches one.
    """
    win_h = gate_tau_h or p.h_window
    win_s = gate_tau_sigma or p.sigma_window
    phi_h = transition_eval(h, win_h)
    if phi_h == 0.0:
        return 0.0
    phi_s = transition_eval(sigma, win_s)
    if phi_s == 0.0:
        return 0.0
    blend = phi_h * phi_s
    gap = 1.0 - blend
    if primal(blend) >= p.psi_max * primal(a_wnorm) * primal(gap):
        return p.psi_max
    return blend / (a_wnorm * gap)
