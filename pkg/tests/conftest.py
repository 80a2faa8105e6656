"""Общие фикстуры тестов."""

from __future__ import annotations

from pathlib import Path

import pytest

from app.domain.params import ControllerParams, MacroWeights, reference_params
from app.dynamics.inputs import LeaderSchedule
from app.harness.scenario import Scenario, three_phase_scenario


@pytest.fixture
def params() -> ControllerParams:
    return reference_params()


@pytest.fixture
def decoupled_params() -> ControllerParams:
    """Параметры с a = b = 0: пары не связаны макроскопической информацией."""

    base = reference_params()
    return base.model_copy(
        update={"weights": base.weights.model_copy(update={"a": 0.0, "b": 0.0})}
    )


@pytest.fixture
def constant_schedule() -> LeaderSchedule:
    return LeaderSchedule(initial_speed=14.0)


@pytest.fixture
def quiet_scenario(
    params: ControllerParams, constant_schedule: LeaderSchedule
) -> Scenario:
    """Короткий прогон без импульсов и без случайных начальных условий."""

    return Scenario(
        n_followers=3,
        params=params,
        schedule=constant_schedule,
        t_end=5.0,
        ic_radius=(0.0, 0.0),
    )


@pytest.fixture
def three_phase() -> Scenario:
    return three_phase_scenario()


def scaled_weights(params: ControllerParams, factor: float) -> ControllerParams:
    w = params.weights
    weights = MacroWeights(
        gamma_dp=w.gamma_dp,
        gamma_dv=w.gamma_dv,
        a=w.a * factor,
        b=w.b * factor,
        lambda1=w.lambda1,
        lambda2=w.lambda2,
    )
    return params.model_copy(update={"weights": weights})


QUIET_TOML = """
[platoon]
n_followers = 2
ic_radius = [0.0, 0.0]

[gains]
k_dp = 1.0
k_dv = 2.0
dp_bar = 10.0

[macro]
gamma_dp = 0.5
gamma_dv = 0.5
a = 0.2
b = 1.0
lambda1 = 1.5
lambda2 = 1.5

[schedule]
initial_speed = 14.0

[integrator]
h = 0.01
t_end = 2.0
output_interval = 0.1
"""

PULSE_TOML = QUIET_TOML.replace("t_end = 2.0", "t_end = 6.0") + """
[[pulses]]
target = 0
t_on = 1.0
duration = 1.0
amplitude = 2.0
"""


@pytest.fixture
def quiet_config(tmp_path: Path) -> Path:
    path = tmp_path / "quiet.toml"
    path.write_text(QUIET_TOML, encoding="utf-8")
    return path


@pytest.fixture
def pulse_config(tmp_path: Path) -> Path:
    path = tmp_path / "pulse.toml"
    path.write_text(PULSE_TOML, encoding="utf-8")
    return path
