from __future__ import annotations

import math

import numpy as np
import pytest

from app.dynamics.simulation import Trajectory
from app.harness.metrics import asymptotic_check, compute_metrics

DP_BAR = 10.0


def make_trajectory(t: np.ndarray, errors: np.ndarray) -> Trajectory:
    """Траектория, у которой отклонение пары i — это errors[:, i] по dp."""

    zeros = np.zeros_like(errors)
    return Trajectory(
        t=t,
        leader_p=14.0 * t,
        leader_v=np.full(t.size, 14.0),
        p=np.zeros_like(errors),
        v=np.full(errors.shape, 14.0),
        u_ctrl=zeros,
        u_app=zeros,
        dp=-DP_BAR + errors,
        dv=zeros,
        rho1=zeros,
        rho2=zeros,
        psi_dp_prev=zeros,
        psi_dv_prev=zeros,
        dp_bar=DP_BAR,
    )


def test_peaks_and_amplification() -> None:
    t = np.arange(5.0)
    errors = np.array(
        [[0.0, 0.0], [2.0, 1.0], [1.0, 0.5], [0.05, 0.0], [0.0, 0.0]]
    )
    metrics = compute_metrics(make_trajectory(t, errors), (0.0, 1.5), 0.1)
    assert metrics.peak_per_vehicle == (2.0, 1.0)
    assert metrics.platoon_peak == 2.0
    assert metrics.amplification == (0.5,)
    assert metrics.residual == 0.0
    assert metrics.min_spacing == pytest.approx(8.0)
    assert metrics.settling_times == pytest.approx((1.0, 0.5))


def test_quiet_phase_settles_immediately() -> None:
    t = np.arange(4.0)
    errors = np.zeros((4, 1))
    metrics = compute_metrics(make_trajectory(t, errors))
    assert metrics.settling_times == (0.0,)
    assert metrics.platoon_peak == 0.0
    assert metrics.amplification == ()


@pytest.mark.parametrize(
    ("upstream", "downstream", "expected"),
    [(0.0, 0.0, 0.0), (0.0, 0.3, math.inf)],
)
def test_amplification_with_resting_predecessor(
    upstream: float, downstream: float, expected: float
) -> None:
    t = np.arange(3.0)
    errors = np.array([[0.0, 0.0], [upstream, downstream], [0.0, 0.0]])
    metrics = compute_metrics(make_trajectory(t, errors))
    assert metrics.amplification == (expected,)


def test_asymptotic_check_decaying() -> None:
    t = np.round(np.arange(0.0, 10.05, 0.1), 10)
    errors = 0.1 * np.exp(-t)[:, np.newaxis] * np.ones((1, 2))
    traj = make_trajectory(t, errors)
    assert asymptotic_check(traj, 5.0, 0.15)
    assert not asymptotic_check(traj, 5.0, 1e-4)


def test_asymptotic_check_growing_envelope() -> None:
    t = np.round(np.arange(0.0, 10.05, 0.1), 10)
    errors = (0.001 * t)[:, np.newaxis]
    assert not asymptotic_check(make_trajectory(t, errors), 5.0, 0.15)


def test_asymptotic_window_must_fit() -> None:
    t = np.arange(3.0)
    traj = make_trajectory(t, np.zeros((3, 1)))
    with pytest.raises(ValueError, match="t_from"):
        asymptotic_check(traj, 2.0, 0.1)
