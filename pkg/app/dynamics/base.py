"""Контракты для численного интегрирования.

Интегратор не знает про колонну: он работает с любой правой частью,
реализующей DerivativeFn, и с любой проекцией состояния (StateProjection),
которая применяется после шага (например, ограничение скоростей).
"""

from __future__ import annotations

from typing import Protocol

from app.domain.states import FloatArray


class DerivativeFn(Protocol):
    """Правая часть ОДУ y' = f(t, y)."""

    def __call__(self, t: float, y: FloatArray) -> FloatArray:
        """Вернуть производную состояния в момент t."""


class StateProjection(Protocol):
    """Отображение состояния на допустимое множество после шага."""

    def __call__(self, y: FloatArray) -> FloatArray:
        """Вернуть спроецированное состояние."""
