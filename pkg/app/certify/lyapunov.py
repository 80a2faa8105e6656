"""Функция Ляпунова пары и связанные с ней константы.

W(χ̃) = ½e1² + ½e2² + ½ρ1² + ½ρ2², где e1 = dp − dp^r, e2 = dv − dv^r.

В координатах отклонения χ̃ = (dp + dp_bar, dv, ρ1, ρ2) ошибки линейны:
(e1, e2, ρ1, ρ2) = T·χ̃. Поэтому:
- точные границы W: ½λmin(TᵀT)|χ̃|² ≤ W ≤ ½λmax(TᵀT)|χ̃|²,
- без возмущения −Ẇ = χ̃ᵀAχ̃, A = TᵀMT, и точная константа убывания — λmin(A).

Константы в замкнутой форме (α̲ = ½, ᾱ, α = min{q1, K_dv, q4, λ2 + K_dv})
считаются отдельно: на них построено γ̃ регулятора, но как границы W они
верны не для всех состояний.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh

from app.control.controller import spacing_reference, velocity_reference
from app.control.macro import psi_dp, psi_dv
from app.domain.params import ControllerParams
from app.domain.states import (
    Equilibrium,
    ExtendedState,
    FloatArray,
    deviation_norm,
)

logger = logging.getLogger("platoon.certify")


def _errors(x: ExtendedState, p: ControllerParams) -> tuple[float, float]:
    e1 = x.dp - spacing_reference(x.rho1, p.dp_bar)
    e2 = x.dv - velocity_reference(x, p)
    return e1, e2


def lyapunov_value(x: ExtendedState, p: ControllerParams) -> float:
    """W(χ̃) для пары."""

    e1, e2 = _errors(x, p)
    return 0.5 * (e1 * e1 + e2 * e2 + x.rho1 * x.rho1 + x.rho2 * x.rho2)


def lyapunov_derivative(
    x: ExtendedState, psi_dp_prev: float, psi_dv_prev: float, p: ControllerParams
) -> float:
    """Ẇ вдоль замкнутой системы без насыщения."""

    w = p.weights
    e1, e2 = _errors(x, p)
    return (
        -p.k_dp * e1 * e1
        - p.k_dv * e2 * e2
        - w.lambda1 * x.rho1 * x.rho1
        - w.lambda2 * x.rho2 * x.rho2
        + x.rho1 * x.rho2
        + x.rho2 * (w.a * psi_dp_prev + w.b * psi_dv_prev)
    )


def composite_lyapunov(
    followers: Sequence[ExtendedState],
    p: ControllerParams,
    d: Sequence[float] | FloatArray,
) -> float:
    """Составная функция W_c = Σ d_i·W(χ̃_i) по колонне."""

    if len(d) != len(followers):
        raise ValueError(f"expected {len(followers)} weights, got {len(d)}")
    return float(sum(di * lyapunov_value(x, p) for di, x in zip(d, followers)))


def lyapunov_bounds(p: ControllerParams) -> tuple[float, float]:
    """(α̲, ᾱ) в замкнутой форме."""

    k, lam1 = p.k_dp, p.weights.lambda1
    return 0.5, 0.5 * max(1.0 + k * k, 2.0 + (lam1 - k) ** 2)


def alpha_decay(p: ControllerParams) -> float:
    """α = min{q1, K_dv, q4, λ2 + K_dv}."""

    k, kv = p.k_dp, p.k_dv
    lam1, lam2 = p.weights.lambda1, p.weights.lambda2
    q1 = k * (1.0 + k * kv)
    q4 = k + lam1 + kv * (lam1 - k) ** 2
    return min(q1, kv, q4, lam2 + kv)


def decay_q_matrix(p: ControllerParams) -> FloatArray:
    """Верхнетреугольная матрица Q_W в том виде, из которого выведено α."""

    k, kv = p.k_dp, p.k_dv
    lam1, lam2 = p.weights.lambda1, p.weights.lambda2
    q1 = k * (1.0 + k * kv)
    q2 = 2.0 * k * (1.0 + kv * (k - lam1))
    q3 = 2.0 * kv * (k - lam1)
    q4 = k + lam1 + kv * (lam1 - k) ** 2
    q5 = 1.0 - 2.0 * kv * (k - lam1)
    return np.array(
        [
            [q1, 2.0 * k * kv, q2, 2.0 * k * kv],
            [0.0, kv, q3, 2.0 * kv],
            [0.0, 0.0, q4, q5],
            [0.0, 0.0, 0.0, lam2 + kv],
        ]
    )


def q_matrix_symmetric_min(p: ControllerParams) -> float:
    """λmin симметричной части Q_W (для сравнения с α)."""

    q = decay_q_matrix(p)
    return float(eigvalsh(0.5 * (q + q.T))[0])


def error_transform(p: ControllerParams) -> FloatArray:
    """Матрица T: (dp + dp_bar, dv, ρ1, ρ2) ↦ (e1, e2, ρ1, ρ2)."""

    k, lam1 = p.k_dp, p.weights.lambda1
    return np.array(
        [
            [1.0, 0.0, 1.0, 0.0],
            [k, 1.0, k - lam1, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def exact_lyapunov_bounds(p: ControllerParams) -> tuple[float, float]:
    """Точные (α̲, ᾱ): половины крайних собственных чисел TᵀT."""

    t = error_transform(p)
    eig = eigvalsh(t.T @ t)
    return 0.5 * float(eig[0]), 0.5 * float(eig[-1])


def decay_form(p: ControllerParams) -> FloatArray:
    """Симметричная матрица A: −Ẇ = χ̃ᵀAχ̃ при нулевом ψ."""

    w = p.weights
    m = np.diag([p.k_dp, p.k_dv, w.lambda1, w.lambda2])
    m[2, 3] = m[3, 2] = -0.5
    t = error_transform(p)
    return t.T @ m @ t


def exact_alpha_decay(p: ControllerParams) -> float:
    alpha = float(eigvalsh(decay_form(p))[0])
    if alpha <= 0.0:
        logger.warning("decay form is not positive definite: lambda_min=%g", alpha)
    return alpha


@dataclass(frozen=True, slots=True)
class IssRegionResult:
    """Результат проверки точки на ISS-неравенство убывания.

inside — точка в области |χ̃_i| ≥ d/(αΥ)·max_j|χ̃_j|,
holds — неравенство Ẇ ≤ −(1−Υ)α|χ̃_i|² выполнено (вне области всегда True).
"""

    inside: bool
    holds: bool
    threshold: float
    w_dot: float
    bound: float


def iss_region_check(
    x: ExtendedState,
    predecessors: Sequence[ExtendedState],
    p: ControllerParams,
    alpha: float | None = None,
    tolerance: float = 1e-8,
) -> IssRegionResult:
    """Проверить ISS-неравенство убывания для пары i.

predecessors — состояния пар 0..i−1; ψ^{i−1} считается по ним.
alpha по умолчанию — константа в замкнутой форме; для строгой проверки
передаётся exact_alpha_decay(p).
"""
    w = p.weights
    a = alpha_decay(p) if alpha is None else alpha
    eq = Equilibrium.for_spacing(p.dp_bar)
    d = w.a * w.gamma_dp + w.b * w.gamma_dv
    norm = deviation_norm(x, eq)
    max_prev = max((deviation_norm(y, eq) for y in predecessors), default=0.0)
    threshold = d / (a * p.upsilon) * max_prev

    last = len(predecessors) - 1
    dps = [y.dp for y in predecessors]
    dvs = [y.dv for y in predecessors]
    psi_p = psi_dp(dps, p.dp_bar, w, last)
    psi_v = psi_dv(dvs, w, last)

    w_dot = lyapunov_derivative(x, psi_p, psi_v, p)
    bound = -(1.0 - p.upsilon) * a * norm * norm
    inside = norm >= threshold
    holds = (not inside) or w_dot <= bound + tolerance
    return IssRegionResult(
        inside=inside, holds=holds, threshold=threshold, w_dot=w_dot, bound=bound
    )
