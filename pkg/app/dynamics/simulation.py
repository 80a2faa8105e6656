"""Прогон сценария: интегрирование замкнутой системы и запись траектории."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from app.domain.states import FloatArray, PlatoonState
from app.harness.scenario import Scenario, initial_platoon

from .closed_loop import ClosedLoopModel, ClosedLoopSignals

logger = logging.getLogger("platoon.sim")


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Временные ряды прогона, прореженные до интервала вывода.

Массивы по автомобилям имеют форму (K, N+1): строка — момент времени,
столбец — индекс ведомого.
"""

    t: FloatArray
    leader_p: FloatArray
    leader_v: FloatArray
    p: FloatArray
    v: FloatArray
    u_ctrl: FloatArray
    u_app: FloatArray
    dp: FloatArray
    dv: FloatArray
    rho1: FloatArray
    rho2: FloatArray
    psi_dp_prev: FloatArray
    psi_dv_prev: FloatArray
    dp_bar: float

    @property
    def n_vehicles(self) -> int:
        return int(self.p.shape[1])

    def deviation_norms(self) -> FloatArray:
        """|χ̃_i(t)| для всех отсчётов и автомобилей."""

        return np.sqrt(
            (self.dp + self.dp_bar) ** 2 + self.dv**2 + self.rho1**2 + self.rho2**2
        )


class _Recorder:
    def __init__(self, samples: int, m: int) -> None:
        self.t = np.empty(samples)
        self.leader_p = np.empty(samples)
        self.leader_v = np.empty(samples)
        self.columns = {
            name: np.empty((samples, m))
            for name in (
                "p", "v", "u_ctrl", "u_app", "dp", "dv",
                "rho1", "rho2", "psi_dp_prev", "psi_dv_prev",
            )
        }
        self._m = m
        self._row = 0

    def record(self, t: float, y: FloatArray, signals: ClosedLoopSignals) -> None:
        m, row = self._m, self._row
        p = y[: m + 1]
        v = y[m + 1 : 2 * m + 2]
        self.t[row] = t
        self.leader_p[row] = p[0]
        self.leader_v[row] = v[0]
        c = self.columns
        c["p"][row] = p[1:]
        c["v"][row] = v[1:]
        c["u_ctrl"][row] = signals.u_ctrl
        c["u_app"][row] = signals.u_app
        c["dp"][row] = np.diff(p)
        c["dv"][row] = np.diff(v)
        c["rho1"][row] = y[2 * m + 2 : 3 * m + 2]
        c["rho2"][row] = y[3 * m + 2 :]
        c["psi_dp_prev"][row] = signals.psi_dp_prev
        c["psi_dv_prev"][row] = signals.psi_dv_prev
        self._row += 1

    def finish(self, dp_bar: float) -> Trajectory:
        return Trajectory(
            t=self.t,
            leader_p=self.leader_p,
            leader_v=self.leader_v,
            dp_bar=dp_bar,
            **self.columns,
        )


def simulate(scenario: Scenario, initial: PlatoonState | None = None) -> Trajectory:
    """Проинтегрировать сценарий от t = 0 до t_end с шагом h.

Если initial не задан, начальное состояние берётся из случайного закона
сценария (зерно seed). Отсчёты записываются каждые output_interval секунд,
включая t = 0 и t = t_end.
"""
    model = ClosedLoopModel(
        scenario.params,
        scenario.schedule,
        scenario.n_followers,
        pulses=scenario.pulses,
        limits=scenario.limits,
    )
    state = initial if initial is not None else initial_platoon(scenario)
    y = model.pack(state)

    h = scenario.h
    n_steps = round(scenario.t_end / h)
    stride = round(scenario.output_interval / h)
    recorder = _Recorder(n_steps // stride + 1, scenario.n_followers + 1)
    logger.info(
        "simulate: N=%d, h=%g, t_end=%g, seed=%d",
        scenario.n_followers, h, scenario.t_end, scenario.seed,
    )

    for k in range(n_steps + 1):
        t = k * h
        if k % stride == 0:
            recorder.record(t, y, model.evaluate(t, y))
        if k < n_steps:
            y = model.step(t, y, h)

    trajectory = recorder.finish(scenario.params.dp_bar)
    logger.info(
        "simulate done: %d samples, final max deviation %.3g",
        trajectory.t.size, float(trajectory.deviation_norms()[-1].max()),
    )
    return trajectory
