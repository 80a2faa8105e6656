"""Эмпирические метрики строковой устойчивости по траектории.

Все метрики считаются только по записанной траектории:
- пик отклонения каждого автомобиля max_t |χ̃_i(t)| и пик колонны,
- время установления в каждой фазе (от начала фазы до последнего
  превышения допуска огибающей max_i |χ̃_i(t)|),
- профиль усиления peak(i)/peak(i−1),
- остаток max_i |χ̃_i(t_end)|,
- минимальная дистанция между соседями (столкновение — дистанция ≤ 0).
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.dynamics.simulation import Trajectory


class Metrics(BaseModel):
    model_config = ConfigDict(frozen=True)

    peak_per_vehicle: tuple[float, ...]
    platoon_peak: float
    settling_times: tuple[float, ...]
    amplification: tuple[float, ...]
    residual: float
    min_spacing: float


def _ratio(num: float, den: float) -> float:
    if den > 0.0:
        return num / den
    return 0.0 if num == 0.0 else math.inf


def compute_metrics(
    traj: Trajectory,
    phase_starts: tuple[float, ...] = (0.0,),
    settle_tolerance: float = 0.1,
) -> Metrics:
    """Посчитать метрики прогона."""

    norms = traj.deviation_norms()
    peaks = norms.max(axis=0)
    envelope = norms.max(axis=1)

    bounds = [*phase_starts, math.inf]
    settling: list[float] = []
    for start, end in zip(bounds[:-1], bounds[1:]):
        in_phase = (traj.t >= start - 1e-9) & (traj.t < end - 1e-9)
        exceed = in_phase & (envelope > settle_tolerance)
        if exceed.any():
            settling.append(float(traj.t[np.flatnonzero(exceed)[-1]] - start))
        else:
            settling.append(0.0)

    amplification = tuple(
        _ratio(float(peaks[i]), float(peaks[i - 1])) for i in range(1, peaks.size)
    )
    return Metrics(
        peak_per_vehicle=tuple(float(x) for x in peaks),
        platoon_peak=float(peaks.max()),
        settling_times=tuple(settling),
        amplification=amplification,
        residual=float(norms[-1].max()),
        min_spacing=float((-traj.dp).min()),
    )


def asymptotic_check(traj: Trajectory, t_from: float, eps: float) -> bool:
    """Проверить схождение в окне [t_from, t_end].

Огибающая max_i |χ̃_i(t)| должна быть меньше eps во всём окне, а максимумы
по секундным отрезкам окна — не возрастать (с допуском eps·1e−3).
"""
    t_end = float(traj.t[-1])
    if not t_from < t_end:
        raise ValueError(f"t_from={t_from} must be before t_end={t_end}")
    envelope = traj.deviation_norms().max(axis=1)
    window = traj.t >= t_from - 1e-9
    if not (envelope[window] < eps).all():
        return False

    chunk_max: list[float] = []
    start = t_from
    while start < t_end - 1e-9:
        sel = (traj.t >= start - 1e-9) & (traj.t < start + 1.0 - 1e-9)
        if sel.any():
            chunk_max.append(float(envelope[sel].max()))
        start += 1.0
    slack = eps * 1e-3
    return all(b <= a + slack for a, b in zip(chunk_max, chunk_max[1:]))
