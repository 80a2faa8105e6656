"""Интегратор с фиксированным шагом.

Классический метод Рунге-Кутты 4-го порядка. Шаг фиксированный: события
на границах насыщения не ищутся, адаптивного шага нет.
"""

from __future__ import annotations

from app.domain.states import FloatArray

from .base import DerivativeFn, StateProjection


def rk4_step(
    y: FloatArray,
    t: float,
    h: float,
    f: DerivativeFn,
    project: StateProjection | None = None,
) -> FloatArray:
    """Шаг RK4 из (t, y) длины h, затем проекция результата, если она задана."""

    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    half = 0.5 * h
    k1 = f(t, y)
    k2 = f(t + half, y + half * k1)
    k3 = f(t + half, y + half * k2)
    k4 = f(t + h, y + h * k3)
    y_next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if project is not None:
        y_next = project(y_next)
    return y_next
