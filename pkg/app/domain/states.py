"""Состояния колонны и переходы между координатами (доменный слой).

Здесь нет интегратора и закона управления, только понятия предметной области:
- абсолютное состояние автомобиля (позиция, скорость),
- состояние пары «лидер-ведомый» (разность позиций и скоростей),
- расширенное состояние пары с внутренним состоянием регулятора ρ,
- равновесие пары и колонны целиком.

Индексация: ведомые автомобили нумеруются 0..N, виртуальный лидер имеет индекс −1.
Пара с индексом i связывает автомобиль i с его предшественником i−1, поэтому
пара 0 — это головной автомобиль и виртуальный лидер.

Все типы неизменяемые (frozen dataclass), их можно свободно передавать между
потоками.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]


class EmptyPlatoonError(ValueError):
    """Выбрасывается, если в колонне нет ни одного ведомого автомобиля."""

    def __init__(self) -> None:
        super().__init__("empty platoon")


@dataclass(frozen=True, slots=True)
class VehicleState:
    """Абсолютное продольное состояние автомобиля."""

    p: float
    v: float


@dataclass(frozen=True, slots=True)
class CarFollowingState:
    """Состояние пары: dp = p_i − p_{i−1}, dv = v_i − v_{i−1}.

Ведомый едет позади предшественника, поэтому в нормальном режиме dp < 0.
"""

    dp: float
    dv: float


@dataclass(frozen=True, slots=True)
class ExtendedState:
    """Расширенное состояние пары: (dp, dv) и состояние регулятора (rho1, rho2)."""

    dp: float
    dv: float
    rho1: float = 0.0
    rho2: float = 0.0

    @property
    def pair(self) -> CarFollowingState:
        """Вернуть микроскопическую часть состояния."""

        return CarFollowingState(dp=self.dp, dv=self.dv)

    def as_array(self) -> FloatArray:
        return np.array([self.dp, self.dv, self.rho1, self.rho2], dtype=np.float64)


@dataclass(frozen=True, slots=True)
class Equilibrium:
    """Равновесие пары: dp = −dp_bar, dv = 0, rho = (0, 0)."""

    dp_eq: float
    dv_eq: float = 0.0
    rho_eq: tuple[float, float] = (0.0, 0.0)

    @classmethod
    def for_spacing(cls, dp_bar: float) -> Equilibrium:
        """Построить равновесие для желаемой дистанции dp_bar > 0."""

        if not dp_bar > 0.0:
            raise ValueError(f"dp_bar must be positive, got {dp_bar}")
        return cls(dp_eq=-float(dp_bar))

    def extended(self) -> ExtendedState:
        return ExtendedState(
            dp=self.dp_eq, dv=self.dv_eq, rho1=self.rho_eq[0], rho2=self.rho_eq[1]
        )


@dataclass(frozen=True, slots=True)
class PlatoonState:
    """Сводное состояние колонны.

leader — виртуальный лидер (индекс −1), его позиция — «фиктивное» состояние,
интеграл скорости, нужный только чтобы абсолютные позиции были определены.
followers — расширенные состояния пар 0..N.
"""

    leader: VehicleState
    followers: tuple[ExtendedState, ...]

    def __post_init__(self) -> None:
        if not self.followers:
            raise EmptyPlatoonError()

    @property
    def n_followers(self) -> int:
        """N: индекс последнего автомобиля (всего в колонне N+1 автомобиль)."""

        return len(self.followers) - 1

    @classmethod
    def at_equilibrium(
        cls, n_followers: int, dp_bar: float, leader: VehicleState
    ) -> PlatoonState:
        """Колонна из N+1 автомобиля, все пары в расширенном равновесии."""

        if n_followers < 0:
            raise ValueError(f"n_followers must be >= 0, got {n_followers}")
        eq = Equilibrium.for_spacing(dp_bar).extended()
        return cls(leader=leader, followers=tuple(eq for _ in range(n_followers + 1)))

    def vehicles(self) -> list[VehicleState]:
        """Абсолютные состояния ведомых автомобилей 0..N."""

        return relative_to_absolute([x.pair for x in self.followers], self.leader)


def deviation(x: ExtendedState, e: Equilibrium) -> FloatArray:
    """Отклонение расширенного состояния от равновесия (4 компоненты)."""

    return np.array(
        [x.dp - e.dp_eq, x.dv - e.dv_eq, x.rho1 - e.rho_eq[0], x.rho2 - e.rho_eq[1]],
        dtype=np.float64,
    )


def deviation_norm(x: ExtendedState, e: Equilibrium) -> float:
    """Евклидова норма отклонения |χ̃_i|."""

    return float(np.linalg.norm(deviation(x, e)))


def absolute_to_relative(
    states: Sequence[VehicleState], leader: VehicleState
) -> list[CarFollowingState]:
    """Перевести абсолютные состояния в состояния пар относительно предшественников."""

    if not states:
        raise EmptyPlatoonError()
    result: list[CarFollowingState] = []
    prev = leader
    for state in states:
        result.append(CarFollowingState(dp=state.p - prev.p, dv=state.v - prev.v))
        prev = state
    return result


def relative_to_absolute(
    pairs: Sequence[CarFollowingState], leader: VehicleState
) -> list[VehicleState]:
    """Обратное преобразование: восстановить абсолютные состояния по лидеру."""

    if not pairs:
        raise EmptyPlatoonError()
    result: list[VehicleState] = []
    p, v = leader.p, leader.v
    for pair in pairs:
        p += pair.dp
        v += pair.dv
        result.append(VehicleState(p=p, v=v))
    return result
