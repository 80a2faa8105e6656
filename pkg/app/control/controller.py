"""Мезоскопический закон управления (микро + макро).

Закон получен бэкстеппингом для политики переменной дистанции:
- опорная дистанция dp^r = −dp_bar − ρ1,
- опорная разность скоростей dv^r = λ1·ρ1 − ρ2 − K_dp·(dp − dp^r),
- управление u_i = u_{i−1} − (dp − dp^r) − K_dv·(dv − dv^r)
  + (K_dp − λ1)(λ1·ρ1 − ρ2) + λ2·ρ2 − K_dp·dv − a·ψ^{i−1}_dp − b·ψ^{i−1}_dv.

Управление аффинно по «питанию» от предшественника (u_{i−1}, ψ_dp, ψ_dv)
с коэффициентами (1, −a, −b). В равновесии с нулевым питанием u = 0.

Насыщение применяется к приложенному ускорению, а не к самому закону:
сертификаты устойчивости всегда считаются для закона без насыщения.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TypeVar

from app.domain.params import ControllerParams
from app.domain.states import ExtendedState, FloatArray

Signal = TypeVar("Signal", float, FloatArray)


@dataclass(frozen=True, slots=True)
class LeaderFeed:
    """Информация, которую автомобиль получает о своём предшественнике.

u_prev — сообщённое ускорение предшественника (без внешнего возмущения),
psi_dp_prev, psi_dv_prev — макроскопические сигналы до предшественника,
available=False моделирует недоступность макроскопической информации:
тогда ψ считаются нулевыми.
"""

    u_prev: float
    psi_dp_prev: float = 0.0
    psi_dv_prev: float = 0.0
    available: bool = True

    def effective_psi(self) -> tuple[float, float]:
        """ψ с учётом флага доступности."""

        if not self.available:
            return 0.0, 0.0
        return self.psi_dp_prev, self.psi_dv_prev


@dataclass(frozen=True, slots=True)
class Saturation:
    """Результат насыщения: значение и признак того, что ограничение сработало."""

    value: float
    clamped: bool


def spacing_reference(rho1: Signal, dp_bar: float) -> Signal:
    """Опорная (отрицательная) дистанция до предшественника."""

    return -dp_bar - rho1


def velocity_reference_law(
    dp: Signal, rho1: Signal, rho2: Signal, p: ControllerParams
) -> Signal:
    """Опорная разность скоростей по массивам/скалярам."""

    w = p.weights
    return w.lambda1 * rho1 - rho2 - p.k_dp * (dp - spacing_reference(rho1, p.dp_bar))


def velocity_reference(x: ExtendedState, p: ControllerParams) -> float:
    """Опорная разность скоростей dv^r для пары."""

    return float(velocity_reference_law(x.dp, x.rho1, x.rho2, p))


def control_law(
    dp: Signal,
    dv: Signal,
    rho1: Signal,
    rho2: Signal,
    u_prev: Signal,
    psi_dp_prev: Signal,
    psi_dv_prev: Signal,
    p: ControllerParams,
) -> Signal:
    """Компактная форма закона управления, векторизуемая по автомобилям."""

    w = p.weights
    e_dp = dp - spacing_reference(rho1, p.dp_bar)
    e_dv = dv - velocity_reference_law(dp, rho1, rho2, p)
    return (
        u_prev
        - e_dp
        - p.k_dv * e_dv
        + (p.k_dp - w.lambda1) * (w.lambda1 * rho1 - rho2)
        + w.lambda2 * rho2
        - p.k_dp * dv
        - w.a * psi_dp_prev
        - w.b * psi_dv_prev
    )


def control_input(x: ExtendedState, feed: LeaderFeed, p: ControllerParams) -> float:
    """Управление u_i для одной пары по её состоянию и питанию от предшественника."""

    psi_p, psi_v = feed.effective_psi()
    return float(
        control_law(x.dp, x.dv, x.rho1, x.rho2, feed.u_prev, psi_p, psi_v, p)
    )


def saturate(u: float, a_max: float) -> Saturation:
    """Ограничить ускорение диапазоном [−a_max, a_max]."""

    if not a_max > 0.0:
        raise ValueError(f"a_max must be positive, got {a_max}")
    if u > a_max:
        return Saturation(value=a_max, clamped=True)
    if u < -a_max:
        return Saturation(value=-a_max, clamped=True)
    return Saturation(value=u, clamped=False)
