"""Внешние входы замкнутой системы.

- LeaderSchedule: кусочно-постоянная желаемая скорость виртуального лидера
  и коэффициент, с которым лидер её отслеживает,
- DisturbancePulse: прямоугольный импульс ускорения на одном автомобиле,
  который не сообщается ведомому,
- Limits: ограничения скорости и ускорения.

Все модели — pydantic, чтобы их можно было читать прямо из TOML-сценария
с проверкой диапазонов.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SpeedSegment(BaseModel):
    """Сегмент расписания: с момента start_time желаемая скорость равна v_bar."""

    model_config = ConfigDict(frozen=True)

    start_time: float = Field(ge=0.0)
    v_bar: float = Field(gt=0.0)


class LeaderSchedule(BaseModel):
    """Расписание желаемой скорости лидера.

До первого сегмента действует initial_speed. Лидер отслеживает ступени
пропорционально: u_{−1} = sat(k_lead·(v_bar(t) − v_{−1})), поэтому на
постоянном участке в установившемся режиме u_{−1} = 0.
"""

    model_config = ConfigDict(frozen=True)

    initial_speed: float = Field(gt=0.0)
    segments: tuple[SpeedSegment, ...] = ()
    k_lead: float = Field(default=2.0, gt=0.0)

    @model_validator(mode="after")
    def _check_sorted(self) -> LeaderSchedule:
        starts = [s.start_time for s in self.segments]
        if starts != sorted(starts):
            raise ValueError("schedule segments must be sorted by start_time")
        return self

    def speed_at(self, t: float) -> float:
        """Желаемая скорость в момент t."""

        speed = self.initial_speed
        for segment in self.segments:
            if t < segment.start_time:
                break
            speed = segment.v_bar
        return speed

    def max_speed(self) -> float:
        return max([self.initial_speed, *(s.v_bar for s in self.segments)])


class DisturbancePulse(BaseModel):
    """Импульс возмущения ускорения на интервале [t_on, t_on + duration).

suppress_macro_for — индекс автомобиля, для которого на время импульса
макроскопическая информация недоступна (None — никому).
"""

    model_config = ConfigDict(frozen=True)

    target: int = Field(ge=0)
    t_on: float = Field(ge=0.0)
    duration: float = Field(gt=0.0)
    amplitude: float
    suppress_macro_for: int | None = Field(default=None, ge=0)

    def active(self, t: float) -> bool:
        return self.t_on <= t < self.t_on + self.duration


class Limits(BaseModel):
    """Ограничения: 0 < v ≤ v_max (левая граница открыта), |u| ≤ a_max."""

    model_config = ConfigDict(frozen=True)

    v_max: float = Field(default=36.0, gt=0.0)
    a_max: float = Field(default=4.0, gt=0.0)
    v_min_open: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def _check_box(self) -> Limits:
        if self.v_min_open >= self.v_max:
            raise ValueError("v_min_open must be below v_max")
        return self

    @property
    def v_floor(self) -> float:
        """Наименьшая допустимая скорость (граница v_min_open исключена)."""

        return self.v_min_open + 1e-9
