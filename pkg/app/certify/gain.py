"""ISS-усиление пары по отклонениям предшественников.

γ̃ = √(ᾱ/α̲)·d/(αΥ), d = a·γ_dp + b·γ_dv. При γ̃ ∈ (0, 1) отклонения
по колонне ограничены геометрическим рядом: β/(1−γ̃), не зависящим от N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from app.domain.params import ControllerParams
from app.domain.states import FloatArray

from .lyapunov import alpha_decay, lyapunov_bounds


class NotStringStableError(ValueError):
    """γ̃ ≥ 1: рекуррентная оценка по колонне не сходится."""

    def __init__(self, gamma_tilde: float) -> None:
        super().__init__(f"not string stable: gamma_tilde={gamma_tilde:g} >= 1")
        self.gamma_tilde = gamma_tilde


@dataclass(frozen=True, slots=True)
class IssGain:
    d: float
    gamma_tilde: float
    string_stable: bool


def interconnection_weight(p: ControllerParams) -> float:
    """d = a·γ_dp + b·γ_dv."""

    w = p.weights
    return w.a * w.gamma_dp + w.b * w.gamma_dv


def gain_from_constants(
    d: float, alpha_lo: float, alpha_hi: float, alpha: float, upsilon: float
) -> float:
    if not 0.0 < upsilon < 1.0:
        raise ValueError(f"upsilon must be in (0, 1), got {upsilon}")
    if alpha_lo <= 0.0 or alpha <= 0.0:
        raise ValueError("alpha_lo and alpha must be positive")
    return math.sqrt(alpha_hi / alpha_lo) * d / (alpha * upsilon)


def iss_gain(p: ControllerParams, upsilon: float | None = None) -> IssGain:
    """γ̃ по константам в замкнутой форме.

upsilon переопределяет p.upsilon (значение вне (0, 1) — ValueError).
"""
    ups = p.upsilon if upsilon is None else upsilon
    alpha_lo, alpha_hi = lyapunov_bounds(p)
    d = interconnection_weight(p)
    gamma = gain_from_constants(d, alpha_lo, alpha_hi, alpha_decay(p), ups)
    return IssGain(d=d, gamma_tilde=gamma, string_stable=0.0 <= gamma < 1.0)


def recursive_bound(gamma_tilde: float, beta0: float) -> float:
    """Равномерная по N оценка β0/(1−γ̃)."""

    if gamma_tilde >= 1.0:
        raise NotStringStableError(gamma_tilde)
    if gamma_tilde < 0.0:
        raise ValueError(f"gamma_tilde must be >= 0, got {gamma_tilde}")
    return beta0 / (1.0 - gamma_tilde)


def k_tilde(p: ControllerParams, size: int) -> FloatArray:
    """k̃_0 = 0, k̃_i = 2/√i·max{a·γ_dp, b·γ_dv} для i ≥ 1."""

    w = p.weights
    peak = max(w.a * w.gamma_dp, w.b * w.gamma_dv)
    out = np.zeros(size)
    idx = np.arange(1, size)
    out[1:] = 2.0 / np.sqrt(idx) * peak
    return out


def k_tilde_alt(p: ControllerParams, size: int) -> FloatArray:
    """Вариант коэффициентов √(3/i)·max{a·γ_dp, b·γ_dv}."""

    w = p.weights
    peak = max(w.a * w.gamma_dp, w.b * w.gamma_dv)
    out = np.zeros(size)
    idx = np.arange(1, size)
    out[1:] = np.sqrt(3.0 / idx) * peak
    return out


def gain_boundary(p: ControllerParams, axis: Literal["a", "b"]) -> float | None:
    """Критическое значение a (или b), при котором γ̃ = 1.

Остальные параметры фиксированы. γ̃ линейно по d, поэтому граница
находится явно. None, если γ̃ ≥ 1 уже при нулевом значении оси.
"""
    w = p.weights
    alpha_lo, alpha_hi = lyapunov_bounds(p)
    per_d = gain_from_constants(1.0, alpha_lo, alpha_hi, alpha_decay(p), p.upsilon)
    d_crit = 1.0 / per_d
    if axis == "a":
        rest, scale = w.b * w.gamma_dv, w.gamma_dp
    elif axis == "b":
        rest, scale = w.a * w.gamma_dp, w.gamma_dv
    else:
        raise ValueError(f"axis must be 'a' or 'b', got {axis!r}")
    if rest >= d_crit:
        return None
    return (d_crit - rest) / scale
