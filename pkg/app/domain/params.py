"""Параметры регулятора.

Pydantic-модели, которые используются:
- как валидируемый контракт для параметров из TOML-сценария,
- как единый источник коэффициентов для закона управления, динамики ρ
  и сертификатов устойчивости.

Диапазоны проверяются на границе через Field(...), поэтому код управления
и сертификации может считать параметры корректными.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class MacroWeights(BaseModel):
    """Веса макроскопической части регулятора.

gamma_dp, gamma_dv — масштабы функций ψ,
a, b — веса, с которыми ψ входят в динамику ρ_2,
lambda1, lambda2 — полюса асимптотически устойчивой динамики ρ.
"""

    model_config = ConfigDict(frozen=True)

    gamma_dp: float = Field(gt=0.0)
    gamma_dv: float = Field(gt=0.0)
    a: float = Field(ge=0.0)
    b: float = Field(ge=0.0)
    lambda1: float = Field(gt=0.0)
    lambda2: float = Field(gt=0.0)


class ControllerParams(BaseModel):
    """Коэффициенты мезоскопического закона управления.

Коэффициенты одинаковы для всех автомобилей колонны.
upsilon (Υ) не входит в сам закон, он нужен только для оценки ISS-усиления.
"""

    model_config = ConfigDict(frozen=True)

    k_dp: float = Field(gt=0.0)
    k_dv: float = Field(gt=0.0)
    weights: MacroWeights
    dp_bar: float = Field(gt=0.0)
    upsilon: float = Field(default=0.9, gt=0.0, lt=1.0)


def reference_params() -> ControllerParams:
    """Параметры эксперимента из трёх фаз (дистанция 10 м)."""

    return ControllerParams(
        k_dp=1.0,
        k_dv=2.0,
        weights=MacroWeights(
            gamma_dp=0.5, gamma_dv=0.5, a=0.2, b=1.0, lambda1=1.5, lambda2=1.5
        ),
        dp_bar=10.0,
        upsilon=0.9,
    )
