"""Матрица S составной функции Ляпунова и диагональное масштабирование D.

S — верхнетреугольная: s_ii = α, s_ij = −k̃_i при i < j. Для α > 0 все
ведущие главные миноры равны α^k, то есть S — M-матрица, и существует
положительная диагональная D, для которой DS + SᵀD положительно определена.

D ищется перебором: d_last = 1, d_i = d_{i+1}/c, c по логарифмической
сетке в [1, 10³] (c = 1 — единичная D). Принимается первое c, при котором
λmin(½(DS + SᵀD)) больше порога.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh

from app.domain.states import FloatArray

logger = logging.getLogger("platoon.certify")

MARGIN_THRESHOLD = 1e-8
RATIO_GRID = np.logspace(0.0, 3.0, 61)


@dataclass(frozen=True, slots=True)
class DiagonalScaling:
    s: FloatArray
    d: FloatArray
    margin: float
    ratio: float


class DiagonalScalingNotFoundError(RuntimeError):
    """Перебор по сетке не нашёл D с положительным запасом."""

    def __init__(self, best: DiagonalScaling) -> None:
        super().__init__(
            f"no diagonal scaling found, best margin {best.margin:g} "
            f"at ratio {best.ratio:g}"
        )
        self.best = best
        self.best_margin = best.margin


def build_s_matrix(size: int, alpha: float, k_tilde: FloatArray) -> FloatArray:
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if len(k_tilde) < size:
        raise ValueError(f"need {size} k_tilde coefficients, got {len(k_tilde)}")
    coeffs = np.asarray(k_tilde, dtype=np.float64)[:size]
    rows = np.repeat(-coeffs[:, np.newaxis], size, axis=1)
    s = np.triu(rows, k=1)
    np.fill_diagonal(s, alpha)
    return s


def leading_principal_minors(s: FloatArray) -> FloatArray:
    return np.array([np.linalg.det(s[:k, :k]) for k in range(1, s.shape[0] + 1)])


def is_z_matrix(s: FloatArray) -> bool:
    """Все внедиагональные элементы неположительны."""

    off = s - np.diagflat(np.diagonal(s))
    return bool(off.max(initial=0.0) <= 0.0)


def is_m_matrix(s: FloatArray) -> bool:
    """Z-матрица с положительными ведущими главными минорами."""

    return is_z_matrix(s) and bool((leading_principal_minors(s) > 0.0).all())


def pd_margin(s: FloatArray, d: FloatArray) -> float:
    """λmin(½(DS + SᵀD))."""

    ds = d[:, np.newaxis] * s
    return float(eigvalsh(0.5 * (ds + ds.T))[0])


def geometric_diagonal(size: int, ratio: float) -> FloatArray:
    """d_last = 1, d_i = d_{i+1}/ratio."""

    return ratio ** -np.arange(size - 1, -1, -1, dtype=np.float64)


def build_s_and_find_d(
    size: int, alpha: float, k_tilde: FloatArray
) -> DiagonalScaling:
    """Собрать S и подобрать D перебором по сетке отношений."""

    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    s = build_s_matrix(size, alpha, k_tilde)
    best: DiagonalScaling | None = None
    for ratio in RATIO_GRID:
        d = geometric_diagonal(size, float(ratio))
        margin = pd_margin(s, d)
        candidate = DiagonalScaling(s=s, d=d, margin=margin, ratio=float(ratio))
        if margin > MARGIN_THRESHOLD:
            logger.debug("diagonal scaling found: ratio=%g margin=%g", ratio, margin)
            return candidate
        if best is None or margin > best.margin:
            best = candidate
    assert best is not None
    logger.warning(
        "diagonal scaling search failed for size=%d, best margin %g", size, best.margin
    )
    raise DiagonalScalingNotFoundError(best)
