"""Замкнутая система колонны.

Истиной считается абсолютное состояние: позиции и скорости лидера и всех
ведомых плюс внутренние состояния регуляторов ρ. Состояния пар выводятся
из него на каждом вычислении правой части.

Упакованный вектор состояния (m = N+1 ведомых):
- p: позиции [p_{−1}, p_0, ..., p_N]  (m+1),
- v: скорости [v_{−1}, v_0, ..., v_N]  (m+1),
- rho1, rho2: по m значений.

Порядок вычисления правой части:
1) ψ^{i−1} для всех автомобилей по текущему глобальному состоянию (ψ^{−1} = 0),
   с обнулением там, где импульс подавляет макроскопическую информацию;
2) u_i по закону управления; предшественник сообщает своё управление
   u_{i−1} как есть: без насыщения и без внешнего возмущения;
3) приложенное ускорение sat(u_i + w_i(t)), обнуление на границах скорости;
4) ṗ = v, v̇ = приложенное ускорение, ρ̇ по линейной динамике.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from app.control.controller import control_law, saturate
from app.control.macro import macro_signals, predecessor_feed, rho_derivative
from app.domain.params import ControllerParams
from app.domain.states import (
    ExtendedState,
    FloatArray,
    PlatoonState,
    VehicleState,
)

from .integrator import rk4_step
from .inputs import DisturbancePulse, LeaderSchedule, Limits


@dataclass(frozen=True, slots=True)
class ClosedLoopSignals:
    """Производная состояния и сигналы управления в один момент времени."""

    derivative: FloatArray
    u_leader: float
    u_ctrl: FloatArray
    u_app: FloatArray
    psi_dp_prev: FloatArray
    psi_dv_prev: FloatArray


class ClosedLoopModel:
    """Правая часть замкнутой системы для колонны из N+1 ведомого."""

    def __init__(
        self,
        params: ControllerParams,
        schedule: LeaderSchedule,
        n_followers: int,
        pulses: Sequence[DisturbancePulse] = (),
        limits: Limits | None = None,
    ) -> None:
        if n_followers < 0:
            raise ValueError(f"n_followers must be >= 0, got {n_followers}")
        for pulse in pulses:
            if pulse.target > n_followers:
                raise ValueError(
                    f"pulse target {pulse.target} outside platoon 0..{n_followers}"
                )
            if pulse.suppress_macro_for is not None and (
                pulse.suppress_macro_for > n_followers
            ):
                raise ValueError(
                    f"suppress_macro_for {pulse.suppress_macro_for} "
                    f"outside platoon 0..{n_followers}"
                )
        self.params = params
        self.schedule = schedule
        self.pulses = tuple(pulses)
        self.limits = limits or Limits()
        self.n_followers = n_followers
        m = n_followers + 1
        self._m = m
        self._p = slice(0, m + 1)
        self._v = slice(m + 1, 2 * m + 2)
        self._rho1 = slice(2 * m + 2, 3 * m + 2)
        self._rho2 = slice(3 * m + 2, 4 * m + 2)

    @property
    def size(self) -> int:
        """Длина упакованного вектора состояния."""

        return 4 * self._m + 2

    def evaluate(self, t: float, y: FloatArray) -> ClosedLoopSignals:
        """Вычислить производную и все сигналы управления в момент t."""

        if y.shape != (self.size,):
            raise ValueError(
                f"state has shape {y.shape}, expected ({self.size},) "
                f"for N={self.n_followers}"
            )
        params = self.params
        a_max = self.limits.a_max
        p, v = y[self._p], y[self._v]
        rho1, rho2 = y[self._rho1], y[self._rho2]
        dp = np.diff(p)
        dv = np.diff(v)

        psi_p, psi_v = predecessor_feed(
            macro_signals(dp, dv, params.dp_bar, params.weights)
        )
        disturbance = np.zeros(self._m)
        for pulse in self.pulses:
            if not pulse.active(t):
                continue
            disturbance[pulse.target] += pulse.amplitude
            if pulse.suppress_macro_for is not None:
                psi_p[pulse.suppress_macro_for] = 0.0
                psi_v[pulse.suppress_macro_for] = 0.0

        v_bar = self.schedule.speed_at(t)
        u_leader = saturate(self.schedule.k_lead * (v_bar - float(v[0])), a_max).value

        # Закон аффинен по u_{i−1}: считаем локальную часть векторно,
        # а сообщённое ускорение предшественника добавляем по цепочке.
        local = control_law(dp, dv, rho1, rho2, 0.0, psi_p, psi_v, params)
        u_ctrl = np.empty(self._m)
        communicated = u_leader
        for i in range(self._m):
            u_ctrl[i] = communicated + local[i]
            communicated = float(u_ctrl[i])

        applied = [saturate(float(u), a_max).value for u in u_ctrl + disturbance]
        acc = np.array([u_leader, *applied])
        blocked = ((v >= self.limits.v_max) & (acc > 0.0)) | (
            (v <= self.limits.v_floor) & (acc < 0.0)
        )
        acc = np.where(blocked, 0.0, acc)

        drho1, drho2 = rho_derivative(rho1, rho2, psi_p, psi_v, params.weights)
        return ClosedLoopSignals(
            derivative=np.concatenate((v, acc, drho1, drho2)),
            u_leader=float(acc[0]),
            u_ctrl=u_ctrl,
            u_app=acc[1:],
            psi_dp_prev=psi_p,
            psi_dv_prev=psi_v,
        )

    def __call__(self, t: float, y: FloatArray) -> FloatArray:
        return self.evaluate(t, y).derivative

    def project(self, y: FloatArray) -> FloatArray:
        """Ограничить скорости коробкой (v_floor, v_max]."""

        out = y.copy()
        out[self._v] = np.clip(out[self._v], self.limits.v_floor, self.limits.v_max)
        return out

    def step(self, t: float, y: FloatArray, h: float) -> FloatArray:
        return rk4_step(y, t, h, self, self.project)

    def pack(self, state: PlatoonState) -> FloatArray:
        """Упаковать сводное состояние колонны в вектор."""

        if state.n_followers != self.n_followers:
            raise ValueError(
                f"state has N={state.n_followers}, model expects N={self.n_followers}"
            )
        vehicles = state.vehicles()
        p = [state.leader.p, *(x.p for x in vehicles)]
        v = [state.leader.v, *(x.v for x in vehicles)]
        rho1 = [x.rho1 for x in state.followers]
        rho2 = [x.rho2 for x in state.followers]
        return np.array([*p, *v, *rho1, *rho2], dtype=np.float64)

    def unpack(self, y: FloatArray) -> PlatoonState:
        """Распаковать вектор в сводное состояние (состояния пар)."""

        if y.shape != (self.size,):
            raise ValueError(f"state has shape {y.shape}, expected ({self.size},)")
        p, v = y[self._p], y[self._v]
        dp, dv = np.diff(p), np.diff(v)
        rho1, rho2 = y[self._rho1], y[self._rho2]
        return PlatoonState(
            leader=VehicleState(p=float(p[0]), v=float(v[0])),
            followers=tuple(
                ExtendedState(
                    dp=float(dp[i]),
                    dv=float(dv[i]),
                    rho1=float(rho1[i]),
                    rho2=float(rho2[i]),
                )
                for i in range(self._m)
            ),
        )


def closed_loop_derivative(
    state: PlatoonState,
    t: float,
    params: ControllerParams,
    schedule: LeaderSchedule,
    pulses: Sequence[DisturbancePulse] = (),
    limits: Limits | None = None,
) -> PlatoonState:
    """Производная сводного состояния колонны в координатах пар.

Для лидера возвращается (ṗ_{−1}, v̇_{−1}), для пар — (Δṗ_i, Δv̇_i, ρ̇1_i, ρ̇2_i).
"""
    model = ClosedLoopModel(
        params, schedule, state.n_followers, pulses=pulses, limits=limits
    )
    m = state.n_followers + 1
    d = model(t, model.pack(state))
    dp_dt = d[: m + 1]
    dv_dt = d[m + 1 : 2 * m + 2]
    drho1 = d[2 * m + 2 : 3 * m + 2]
    drho2 = d[3 * m + 2 :]
    return PlatoonState(
        leader=VehicleState(p=float(dp_dt[0]), v=float(dv_dt[0])),
        followers=tuple(
            ExtendedState(
                dp=float(dp_dt[i + 1] - dp_dt[i]),
                dv=float(dv_dt[i + 1] - dv_dt[i]),
                rho1=float(drho1[i]),
                rho2=float(drho2[i]),
            )
            for i in range(m)
        ),
    )
