"""Конфигурация процесса.

Настройки процесса берутся из переменных окружения через pydantic-settings.
Это даёт:
- строгую валидацию при старте CLI,
- единый источник правды для всех подкоманд (simulate, certify, sweep, report),
- удобные дефолты для локальных прогонов.

Принципы:
- все переменные имеют префикс PLATOON_ (см. env_prefix),
- параметры самого эксперимента живут не здесь, а в TOML-файле сценария
  (см. app/harness/scenario.py); здесь только то, что относится к процессу.
"""

from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки времени выполнения, загружаемые из переменных окружения."""

    model_config = SettingsConfigDict(env_prefix="PLATOON_", case_sensitive=False)

    log_level: str = Field(default="INFO")
    output_dir: str = Field(
        default="out",
        description="Каталог для артефактов, если --out не указан явно.",
    )

    sweep_workers: int = Field(default=4, ge=1)
    sweep_peak_tolerance: float = Field(
        default=0.05,
        gt=0.0,
        description=(
            "Допустимый относительный разброс пикового отклонения колонны "
            "между размерами N в свипе."
        ),
    )
    asymptotic_eps: float = Field(
        default=0.15,
        gt=0.0,
        description="Порог остаточного отклонения в финальном окне прогона.",
    )
    asymptotic_window_s: float = Field(default=5.0, gt=0.0)
