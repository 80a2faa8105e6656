from __future__ import annotations

import numpy as np
import pytest

from app.domain.params import ControllerParams
from app.domain.states import ExtendedState, PlatoonState, VehicleState
from app.dynamics.closed_loop import ClosedLoopModel, closed_loop_derivative
from app.dynamics.inputs import DisturbancePulse, LeaderSchedule, Limits

LEADER = VehicleState(p=0.0, v=14.0)


def displaced_platoon() -> PlatoonState:
    """Пары 0 и 1 смещены, пара 2 в равновесии."""

    return PlatoonState(
        leader=LEADER,
        followers=(
            ExtendedState(dp=-12.0, dv=1.0),
            ExtendedState(dp=-10.0, dv=-2.0),
            ExtendedState(dp=-10.0, dv=0.0),
        ),
    )


def test_equilibrium_is_invariant(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    state = PlatoonState.at_equilibrium(4, params.dp_bar, LEADER)
    rate = closed_loop_derivative(state, 0.0, params, constant_schedule)
    assert rate.leader == VehicleState(p=14.0, v=0.0)
    for pair in rate.followers:
        assert pair == ExtendedState(dp=0.0, dv=0.0, rho1=0.0, rho2=0.0)


def test_single_follower_braking(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    state = PlatoonState(leader=LEADER, followers=(ExtendedState(dp=-10.0, dv=1.0),))
    rate = closed_loop_derivative(state, 0.0, params, constant_schedule)
    assert rate.followers[0].dv == pytest.approx(-3.0)
    assert rate.followers[0].dp == pytest.approx(1.0)


def test_interconnection_acts_on_dv_and_rho2_only(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    rate = closed_loop_derivative(
        displaced_platoon(), 0.0, params, constant_schedule, limits=Limits(a_max=100.0)
    )
    last = rate.followers[2]
    assert last.dp == 0.0
    assert last.rho1 == 0.0
    assert last.dv == pytest.approx(0.85)
    assert last.rho2 == pytest.approx(-0.85)


def test_communicated_acceleration_is_raw_control(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    model = ClosedLoopModel(params, constant_schedule, 2)
    signals = model.evaluate(0.0, model.pack(displaced_platoon()))
    # Пара 0: u_0 = 3; пара 1 добавляет 6; пара 2 получает 9, а не sat(9) = 4.
    assert signals.u_ctrl[0] == pytest.approx(3.0)
    assert signals.u_ctrl[1] == pytest.approx(9.0)
    assert signals.u_ctrl[2] == pytest.approx(9.0 + 0.85)
    assert signals.u_app.tolist() == [3.0, 4.0, 4.0]


def test_pulse_is_not_communicated(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    pulse = DisturbancePulse(target=0, t_on=1.0, duration=2.0, amplitude=2.0)
    state = PlatoonState.at_equilibrium(1, params.dp_bar, LEADER)
    model = ClosedLoopModel(params, constant_schedule, 1, pulses=(pulse,))
    y = model.pack(state)
    assert model.evaluate(0.5, y).u_app.tolist() == [0.0, 0.0]
    signals = model.evaluate(1.0, y)
    assert signals.u_ctrl.tolist() == [0.0, 0.0]
    assert signals.u_app.tolist() == [2.0, 0.0]
    rate = model.unpack(model(1.0, y))
    assert rate.followers[0].dv == pytest.approx(2.0)
    assert rate.followers[1].dv == pytest.approx(-2.0)
    assert model.evaluate(3.0, y).u_app.tolist() == [0.0, 0.0]


def test_macro_suppression_zeroes_feed(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    pulse = DisturbancePulse(
        target=0, t_on=0.0, duration=1.0, amplitude=0.0, suppress_macro_for=2
    )
    model = ClosedLoopModel(params, constant_schedule, 2, pulses=(pulse,))
    y = model.pack(displaced_platoon())
    during = model.evaluate(0.5, y)
    assert during.psi_dp_prev[2] == 0.0 and during.psi_dv_prev[2] == 0.0
    after = model.evaluate(1.5, y)
    assert after.psi_dp_prev[2] == pytest.approx(-0.5)
    assert after.psi_dv_prev[2] == pytest.approx(-0.75)
    # ρ2 пары 2 при подавлении не возбуждается.
    rho2_rate = model(0.5, y)[-1]
    assert rho2_rate == 0.0


def test_velocity_box(params: ControllerParams) -> None:
    schedule = LeaderSchedule(initial_speed=36.0)
    limits = Limits(v_max=36.0)
    top = VehicleState(p=0.0, v=36.0)
    state = PlatoonState(leader=top, followers=(ExtendedState(dp=-5.0, dv=0.0),))
    model = ClosedLoopModel(params, schedule, 0, limits=limits)
    y = model.pack(state)
    # Слишком близко: регулятор тормозит, торможение разрешено.
    assert model.evaluate(0.0, y).u_app[0] < 0.0
    far = model.pack(
        PlatoonState(leader=top, followers=(ExtendedState(dp=-15.0, dv=0.0),))
    )
    # Слишком далеко на v_max: разгон обнуляется.
    assert model.evaluate(0.0, far).u_app[0] == 0.0
    projected = model.project(np.array([0.0, -1.0, 40.0, -0.5, 0.0, 0.0]))
    assert projected[2] == 36.0
    assert 0.0 < projected[3] < 1e-6


def test_pack_unpack(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    model = ClosedLoopModel(params, constant_schedule, 2)
    state = PlatoonState(
        leader=LEADER,
        followers=(
            ExtendedState(dp=-12.0, dv=1.0, rho1=0.25, rho2=-0.5),
            ExtendedState(dp=-10.0, dv=-2.0),
            ExtendedState(dp=-9.0, dv=0.5, rho1=-1.0, rho2=2.0),
        ),
    )
    y = model.pack(state)
    assert y.shape == (model.size,)
    assert model.unpack(y) == state


def test_inconsistent_dimensions(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    model = ClosedLoopModel(params, constant_schedule, 2)
    with pytest.raises(ValueError):
        model.evaluate(0.0, np.zeros(5))
    with pytest.raises(ValueError):
        model.pack(PlatoonState.at_equilibrium(1, 10.0, LEADER))
    with pytest.raises(ValueError):
        ClosedLoopModel(
            params,
            constant_schedule,
            1,
            pulses=(DisturbancePulse(target=2, t_on=0.0, duration=1.0, amplitude=1.0),),
        )


def test_leader_tracking_is_saturated(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> None:
    slow = PlatoonState.at_equilibrium(1, params.dp_bar, VehicleState(p=0.0, v=5.0))
    model = ClosedLoopModel(params, constant_schedule, 1)
    signals = model.evaluate(0.0, model.pack(slow))
    assert signals.u_leader == 4.0
    # Ведомые получают сообщённое u_{−1} = 4 и повторяют его.
    assert signals.u_ctrl.tolist() == pytest.approx([4.0, 4.0])
