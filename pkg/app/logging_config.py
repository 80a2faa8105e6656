"""Конфигурация логирования.

Логирование настраивается централизованно через dictConfig:
- один консольный обработчик и единый формат для всех модулей,
- все модули пишут в логгеры пространства имён `platoon`
  (platoon.sim, platoon.certify, platoon.sweep, platoon.artifacts, platoon.cli),
- CLI и тесты включают логирование одинаково, вызывая configure_logging().
"""

from __future__ import annotations

import logging
import logging.config


def configure_logging(level: str) -> None:
    """Настроить логирование симулятора для вывода в консоль."""

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "default": {
                    "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
                }
            },
            "handlers": {
                "console": {
                    # stderr, чтобы stdout оставался чистым для отчётов CLI.
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "default",
                }
            },
            "loggers": {
                "platoon": {"level": level.upper(), "propagate": True},
            },
            "root": {"handlers": ["console"], "level": "WARNING"},
        }
    )
