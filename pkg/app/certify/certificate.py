"""Сертификат устойчивости колонны.

Собирает в один pydantic-объект все числа, которые нужны для вывода
о строковой устойчивости:
- константы в замкнутой форме (α̲, ᾱ, α) и γ̃ по ним,
- критические значения a и b (γ̃ = 1 при остальных параметрах фиксированных),
- точные константы (границы W через TᵀT, λmin формы убывания) и γ̃ по ним,
- λmin симметричной части Q_W для сравнения с α,
- коэффициенты k̃, матрицу S, найденную диагональ D и запас положительной
  определённости.

Сертификат строится для колонны размера N+1 (матрица S размера N+1).
"""

from __future__ import annotations

import logging

from pydantic import BaseModel, ConfigDict

from app.domain.params import ControllerParams

from .gain import (
    gain_boundary,
    gain_from_constants,
    interconnection_weight,
    iss_gain,
    k_tilde,
    k_tilde_alt,
    recursive_bound,
)
from .lyapunov import (
    alpha_decay,
    exact_alpha_decay,
    exact_lyapunov_bounds,
    lyapunov_bounds,
    q_matrix_symmetric_min,
)
from .mmatrix import (
    DiagonalScalingNotFoundError,
    build_s_and_find_d,
    is_m_matrix,
    leading_principal_minors,
)

logger = logging.getLogger("platoon.certify")


class Certificate(BaseModel):
    """Числа сертификата; порядок полей — порядок строк в текстовом отчёте."""

    model_config = ConfigDict(frozen=True)

    size: int
    alpha_lo: float
    alpha_hi: float
    alpha: float
    d: float
    upsilon: float
    gamma_tilde: float
    string_stable: bool
    recursive_bound_factor: float | None
    a_crit: float | None
    b_crit: float | None
    q_sym_min: float
    alpha_lo_exact: float
    alpha_hi_exact: float
    alpha_exact: float
    gamma_tilde_exact: float | None
    string_stable_exact: bool
    k_tilde: tuple[float, ...]
    k_tilde_alt: tuple[float, ...]
    s_matrix: tuple[tuple[float, ...], ...]
    leading_minors: tuple[float, ...]
    m_matrix: bool
    d_diagonal: tuple[float, ...]
    d_ratio: float
    d_found: bool
    pd_margin: float


def build_certificate(params: ControllerParams, n_followers: int) -> Certificate:
    """Посчитать сертификат для колонны из N+1 автомобиля."""

    if n_followers < 0:
        raise ValueError(f"n_followers must be >= 0, got {n_followers}")
    size = n_followers + 1
    alpha_lo, alpha_hi = lyapunov_bounds(params)
    alpha = alpha_decay(params)
    gain = iss_gain(params)

    factor = recursive_bound(gain.gamma_tilde, 1.0) if gain.string_stable else None

    lo_exact, hi_exact = exact_lyapunov_bounds(params)
    alpha_exact = exact_alpha_decay(params)
    gamma_exact: float | None = None
    if alpha_exact > 0.0:
        gamma_exact = gain_from_constants(
            interconnection_weight(params), lo_exact, hi_exact, alpha_exact,
            params.upsilon,
        )

    coeffs = k_tilde(params, size)
    try:
        scaling = build_s_and_find_d(size, alpha, coeffs)
        found = True
    except DiagonalScalingNotFoundError as exc:
        scaling = exc.best
        found = False

    cert = Certificate(
        size=size,
        alpha_lo=alpha_lo,
        alpha_hi=alpha_hi,
        alpha=alpha,
        d=gain.d,
        upsilon=params.upsilon,
        gamma_tilde=gain.gamma_tilde,
        string_stable=gain.string_stable,
        recursive_bound_factor=factor,
        a_crit=gain_boundary(params, "a"),
        b_crit=gain_boundary(params, "b"),
        q_sym_min=q_matrix_symmetric_min(params),
        alpha_lo_exact=lo_exact,
        alpha_hi_exact=hi_exact,
        alpha_exact=alpha_exact,
        gamma_tilde_exact=gamma_exact,
        string_stable_exact=gamma_exact is not None and gamma_exact < 1.0,
        k_tilde=tuple(float(x) for x in coeffs),
        k_tilde_alt=tuple(float(x) for x in k_tilde_alt(params, size)),
        s_matrix=tuple(tuple(float(x) for x in row) for row in scaling.s),
        leading_minors=tuple(float(x) for x in leading_principal_minors(scaling.s)),
        m_matrix=is_m_matrix(scaling.s),
        d_diagonal=tuple(float(x) for x in scaling.d),
        d_ratio=scaling.ratio,
        d_found=found,
        pd_margin=scaling.margin,
    )
    logger.info(
        "certificate: N=%d gamma_tilde=%.6g stable=%s pd_margin=%.3g",
        n_followers, cert.gamma_tilde, cert.string_stable, cert.pd_margin,
    )
    return cert
