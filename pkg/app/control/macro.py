"""Макроскопическая информация о колонне.

Для автомобиля i статистики считаются по префиксу колонны 0..i:
- среднее и дисперсия межмашинных дистанций dp,
- среднее и дисперсия разностей скоростей dv.

Дисперсия — «генеральная» (делитель i+1), считается в два прохода:
сначала среднее, затем сумма квадратов отклонений. Крошечные отрицательные
значения от округления обрезаются до нуля, чтобы корень был определён.

Функции ψ — это знаковые, масштабированные стандартные отклонения:
ψ_dp = γ_dp·sign(dp_bar + μ_dp)·σ_dp,  ψ_dv = γ_dv·sign(μ_dv)·σ_dv.
Автомобиль i использует ψ^{i−1}, посчитанную до предшественника;
для головного автомобиля ψ^{−1} = 0.

Статистики считаются централизованно по глобальному состоянию (как это
сделала бы дорожная инфраструктура), распределённая оценка не моделируется.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import TypeVar

import numpy as np

from app.domain.params import MacroWeights
from app.domain.states import FloatArray

Signal = TypeVar("Signal", float, FloatArray)


@dataclass(frozen=True, slots=True)
class MacroSignals:
    """Макроскопические сигналы для всех префиксов 0..i, i = 0..N."""

    psi_dp: FloatArray
    psi_dv: FloatArray
    mu_dp: FloatArray
    sigma2_dp: FloatArray
    mu_dv: FloatArray
    sigma2_dv: FloatArray


def _as_vector(values: Sequence[float] | FloatArray) -> FloatArray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    return arr


def prefix_mean_variance(
    values: Sequence[float] | FloatArray, upto: int
) -> tuple[float, float]:
    """Среднее и генеральная дисперсия по индексам 0..upto включительно."""

    arr = _as_vector(values)
    if not 0 <= upto < arr.size:
        raise IndexError(f"prefix index {upto} out of range for {arr.size} values")
    head = arr[: upto + 1]
    mean = float(head.sum() / (upto + 1))
    variance = float(((head - mean) ** 2).sum() / (upto + 1))
    return mean, max(variance, 0.0)


def prefix_statistics(
    values: Sequence[float] | FloatArray,
) -> tuple[FloatArray, FloatArray]:
    """Средние и дисперсии сразу для всех префиксов (векторно, в два прохода)."""

    arr = _as_vector(values)
    n = arr.size
    counts = np.arange(1, n + 1, dtype=np.float64)
    means = np.cumsum(arr) / counts
    # Строка i маски выбирает элементы 0..i.
    mask = np.tri(n, dtype=np.float64)
    centered = arr[np.newaxis, :] - means[:, np.newaxis]
    variances = (mask * centered**2).sum(axis=1) / counts
    return means, np.maximum(variances, 0.0)


def sign(y: float) -> int:
    """Трёхзначная функция знака: sign(0) = 0."""

    if y > 0.0:
        return 1
    if y < 0.0:
        return -1
    return 0


def psi_dp(
    dp_values: Sequence[float] | FloatArray, dp_bar: float, w: MacroWeights, i: int
) -> float:
    """ψ^i_dp по префиксу дистанций 0..i; для i = −1 возвращает 0."""

    if i == -1:
        return 0.0
    mean, variance = prefix_mean_variance(dp_values, i)
    return w.gamma_dp * sign(dp_bar + mean) * float(np.sqrt(variance))


def psi_dv(dv_values: Sequence[float] | FloatArray, w: MacroWeights, i: int) -> float:
    """ψ^i_dv по префиксу разностей скоростей 0..i; для i = −1 возвращает 0."""

    if i == -1:
        return 0.0
    mean, variance = prefix_mean_variance(dv_values, i)
    return w.gamma_dv * sign(mean) * float(np.sqrt(variance))


def macro_signals(
    dp: FloatArray, dv: FloatArray, dp_bar: float, w: MacroWeights
) -> MacroSignals:
    """Посчитать ψ^i и статистики для всех префиксов колонны за один вызов."""

    mu_dp, sigma2_dp = prefix_statistics(dp)
    mu_dv, sigma2_dv = prefix_statistics(dv)
    return MacroSignals(
        psi_dp=w.gamma_dp * np.sign(dp_bar + mu_dp) * np.sqrt(sigma2_dp),
        psi_dv=w.gamma_dv * np.sign(mu_dv) * np.sqrt(sigma2_dv),
        mu_dp=mu_dp,
        sigma2_dp=sigma2_dp,
        mu_dv=mu_dv,
        sigma2_dv=sigma2_dv,
    )


def predecessor_feed(signals: MacroSignals) -> tuple[FloatArray, FloatArray]:
    """Сдвинуть ψ^i в питание ψ^{i−1} для автомобилей 0..N (ψ^{−1} = 0)."""

    psi_p = np.concatenate(([0.0], signals.psi_dp[:-1]))
    psi_v = np.concatenate(([0.0], signals.psi_dv[:-1]))
    return psi_p, psi_v


def rho_derivative(
    rho1: Signal,
    rho2: Signal,
    psi_dp_prev: Signal,
    psi_dv_prev: Signal,
    w: MacroWeights,
) -> tuple[Signal, Signal]:
    """Правая часть динамики ρ: линейный фильтр, возбуждаемый ψ^{i−1}.

Работает и со скалярами, и с массивами по всем автомобилям сразу.
"""
    drho1 = -w.lambda1 * rho1 + rho2
    drho2 = -w.lambda2 * rho2 + w.a * psi_dp_prev + w.b * psi_dv_prev
    return drho1, drho2
