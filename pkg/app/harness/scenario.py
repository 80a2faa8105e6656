"""Сценарий эксперимента.

Сценарий — один валидируемый объект, из которого строится прогон:
- колонна (N), параметры регулятора и ограничения,
- расписание лидера и импульсы возмущения,
- шаг интегрирования, длительность, интервал вывода,
- зерно и радиус случайных начальных условий,
- границы фаз и допуск для времени установления.

Файл сценария — TOML с секциями [platoon], [gains], [macro], [limits],
[schedule], [[pulses]], [integrator]. Ключи секций совпадают с именами
параметров, лишние ключи считаются ошибкой.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.domain.params import ControllerParams, MacroWeights, reference_params
from app.domain.states import ExtendedState, PlatoonState, VehicleState
from app.dynamics.inputs import DisturbancePulse, LeaderSchedule, Limits, SpeedSegment

_GRID_TOL = 1e-9


def _is_multiple(value: float, step: float) -> bool:
    return abs(round(value / step) * step - value) <= _GRID_TOL * max(1.0, value)


class Scenario(BaseModel):
    """Полное описание одного прогона."""

    model_config = ConfigDict(frozen=True)

    n_followers: int = Field(ge=0)
    params: ControllerParams
    schedule: LeaderSchedule
    pulses: tuple[DisturbancePulse, ...] = ()
    limits: Limits = Limits()
    h: float = Field(default=0.01, gt=0.0)
    t_end: float = Field(default=60.0, gt=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    ic_radius: tuple[float, float] = (2.0, 1.0)
    output_interval: float = Field(default=0.1, gt=0.0)
    phase_starts: tuple[float, ...] = (0.0,)
    settle_tolerance: float = Field(default=0.1, gt=0.0)

    @model_validator(mode="after")
    def _check_consistency(self) -> Scenario:
        if not _is_multiple(self.output_interval, self.h):
            raise ValueError("h must divide output_interval")
        if not _is_multiple(self.t_end, self.h):
            raise ValueError("h must divide t_end")
        if min(self.ic_radius) < 0.0:
            raise ValueError("ic_radius components must be >= 0")
        if self.schedule.max_speed() > self.limits.v_max:
            raise ValueError("schedule speeds must not exceed limits.v_max")
        for pulse in self.pulses:
            if pulse.target > self.n_followers:
                raise ValueError(f"pulse target {pulse.target} > n_followers")
            if (
                pulse.suppress_macro_for is not None
                and pulse.suppress_macro_for > self.n_followers
            ):
                raise ValueError(
                    f"suppress_macro_for {pulse.suppress_macro_for} > n_followers"
                )
        starts = list(self.phase_starts)
        if not starts or starts != sorted(starts) or starts[0] != 0.0:
            raise ValueError("phase_starts must be sorted and start at 0")
        if starts[-1] >= self.t_end:
            raise ValueError("phase_starts must lie before t_end")
        return self


class PlatoonSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_followers: int
    seed: int = 0
    ic_radius: tuple[float, float] = (2.0, 1.0)


class GainsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k_dp: float
    k_dv: float
    dp_bar: float
    upsilon: float = 0.9


class ScheduleSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    initial_speed: float
    k_lead: float = 2.0
    segments: tuple[SpeedSegment, ...] = ()
    phase_starts: tuple[float, ...] = (0.0,)
    settle_tolerance: float = 0.1


class IntegratorSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    h: float = 0.01
    t_end: float = 60.0
    output_interval: float = 0.1


class ScenarioFile(BaseModel):
    """Структура TOML-файла сценария (секции один в один)."""

    model_config = ConfigDict(extra="forbid")

    platoon: PlatoonSection
    gains: GainsSection
    macro: MacroWeights
    limits: Limits = Limits()
    schedule: ScheduleSection
    pulses: tuple[DisturbancePulse, ...] = ()
    integrator: IntegratorSection = IntegratorSection()

    def to_scenario(self) -> Scenario:
        return Scenario(
            n_followers=self.platoon.n_followers,
            params=ControllerParams(
                k_dp=self.gains.k_dp,
                k_dv=self.gains.k_dv,
                weights=self.macro,
                dp_bar=self.gains.dp_bar,
                upsilon=self.gains.upsilon,
            ),
            schedule=LeaderSchedule(
                initial_speed=self.schedule.initial_speed,
                segments=self.schedule.segments,
                k_lead=self.schedule.k_lead,
            ),
            pulses=self.pulses,
            limits=self.limits,
            h=self.integrator.h,
            t_end=self.integrator.t_end,
            seed=self.platoon.seed,
            ic_radius=self.platoon.ic_radius,
            output_interval=self.integrator.output_interval,
            phase_starts=self.schedule.phase_starts,
            settle_tolerance=self.schedule.settle_tolerance,
        )


def load_scenario(path: str | Path) -> Scenario:
    """Прочитать и проверить сценарий из TOML-файла.

Ошибки синтаксиса TOML и pydantic.ValidationError — это ValueError,
в сообщении есть путь к полю.
"""
    with Path(path).open("rb") as fh:
        data = tomllib.load(fh)
    return ScenarioFile.model_validate(data).to_scenario()


def initial_platoon(scenario: Scenario) -> PlatoonState:
    """Случайные начальные условия вокруг равновесия.

Для каждой пары dp ~ U[−dp_bar − r_dp, −dp_bar + r_dp],
dv ~ U[−r_dv, r_dv], ρ = 0. Сначала тянутся все dp, затем все dv.
Лидер стартует из p = 0 со скоростью initial_speed.
"""
    rng = np.random.default_rng(scenario.seed)
    m = scenario.n_followers + 1
    r_dp, r_dv = scenario.ic_radius
    dp = -scenario.params.dp_bar + rng.uniform(-r_dp, r_dp, size=m)
    dv = rng.uniform(-r_dv, r_dv, size=m)
    return PlatoonState(
        leader=VehicleState(p=0.0, v=scenario.schedule.initial_speed),
        followers=tuple(
            ExtendedState(dp=float(dp[i]), dv=float(dv[i])) for i in range(m)
        ),
    )


def three_phase_scenario(seed: int = 20190725) -> Scenario:
    """Эксперимент из трёх фаз для 11 автомобилей.

- фаза 1 [0, 10) с: схождение из случайных начальных условий,
- фаза 2 [10, 30) с: импульсы +4 и −4 м/с² по 5 с на автомобиле 0,
  автомобиль 1 при этом не получает макроскопической информации,
- фаза 3 [30, 60] с: лидер меняет скорость на 30 м/с, затем на 20 м/с.
"""
    return Scenario(
        n_followers=10,
        params=reference_params(),
        schedule=LeaderSchedule(
            initial_speed=14.0,
            segments=(
                SpeedSegment(start_time=30.0, v_bar=30.0),
                SpeedSegment(start_time=45.0, v_bar=20.0),
            ),
        ),
        pulses=(
            DisturbancePulse(
                target=0, t_on=10.0, duration=5.0, amplitude=4.0, suppress_macro_for=1
            ),
            DisturbancePulse(
                target=0, t_on=15.0, duration=5.0, amplitude=-4.0, suppress_macro_for=1
            ),
        ),
        limits=Limits(),
        h=0.01,
        t_end=60.0,
        seed=seed,
        ic_radius=(2.0, 1.0),
        output_interval=0.1,
        phase_starts=(0.0, 10.0, 30.0),
        settle_tolerance=0.1,
    )
