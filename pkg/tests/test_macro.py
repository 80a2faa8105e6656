from __future__ import annotations

import numpy as np
import pytest

from app.control.macro import (
    macro_signals,
    predecessor_feed,
    prefix_mean_variance,
    prefix_statistics,
    psi_dp,
    psi_dv,
    rho_derivative,
    sign,
)
from app.domain.params import ControllerParams, MacroWeights
from app.dynamics.integrator import rk4_step


@pytest.mark.parametrize(
    ("values", "upto", "expected"),
    [
        ([-10.0, -10.0, -10.0], 2, (-10.0, 0.0)),
        ([-12.0, -10.0], 1, (-11.0, 1.0)),
        ([5.0], 0, (5.0, 0.0)),
    ],
)
def test_prefix_mean_variance(
    values: list[float], upto: int, expected: tuple[float, float]
) -> None:
    assert prefix_mean_variance(values, upto) == pytest.approx(expected)


@pytest.mark.parametrize("upto", [-1, 3])
def test_prefix_mean_variance_out_of_range(upto: int) -> None:
    with pytest.raises(IndexError):
        prefix_mean_variance([1.0, 2.0, 3.0], upto)


def test_prefix_statistics_matches_scalar_version() -> None:
    rng = np.random.default_rng(3)
    values = rng.normal(-10.0, 2.0, size=17)
    means, variances = prefix_statistics(values)
    for i in range(values.size):
        mean, var = prefix_mean_variance(values, i)
        assert means[i] == pytest.approx(mean, abs=1e-12)
        assert variances[i] == pytest.approx(var, abs=1e-12)
    assert (variances >= 0.0).all()


@pytest.mark.parametrize(("y", "expected"), [(0.0, 0), (-3.2, -1), (1e-300, 1)])
def test_sign(y: float, expected: int) -> None:
    assert sign(y) == expected


def test_psi_dp(params: ControllerParams) -> None:
    w = params.weights
    assert psi_dp([-10.0, -10.0, -10.0], 10.0, w, 2) == 0.0
    assert psi_dp([-12.0, -10.0], 10.0, w, 1) == pytest.approx(-0.5)
    assert psi_dp([-12.0, -10.0], 10.0, w, -1) == 0.0


def test_psi_dv(params: ControllerParams) -> None:
    w = params.weights
    assert psi_dv([0.0, 0.0], w, 1) == 0.0
    assert psi_dv([1.0, -2.0], w, 1) == pytest.approx(-0.75)
    assert psi_dv([1.0, -2.0], w, -1) == 0.0


def test_macro_signals_and_feed(params: ControllerParams) -> None:
    dp = np.array([-12.0, -10.0, -9.0])
    dv = np.array([1.0, -2.0, 0.5])
    signals = macro_signals(dp, dv, params.dp_bar, params.weights)
    for i in range(3):
        assert signals.psi_dp[i] == pytest.approx(psi_dp(dp, 10.0, params.weights, i))
        assert signals.psi_dv[i] == pytest.approx(psi_dv(dv, params.weights, i))
    # Один автомобиль — нулевая дисперсия.
    assert signals.psi_dp[0] == 0.0
    psi_p, psi_v = predecessor_feed(signals)
    assert psi_p[0] == 0.0 and psi_v[0] == 0.0
    assert psi_p[1:] == pytest.approx(signals.psi_dp[:-1])
    assert psi_v[1:] == pytest.approx(signals.psi_dv[:-1])


def test_rho_derivative(params: ControllerParams) -> None:
    w = params.weights
    assert rho_derivative(0.0, 0.0, 0.0, 0.0, w) == (0.0, 0.0)
    assert rho_derivative(1.0, 2.0, 0.0, 0.0, w) == pytest.approx((0.5, -3.0))
    assert rho_derivative(0.0, 0.0, -0.5, -0.75, w) == pytest.approx((0.0, -0.85))


def test_rho_derivative_vectorised() -> None:
    w = MacroWeights(gamma_dp=1.0, gamma_dv=1.0, a=0.5, b=0.5, lambda1=1.0, lambda2=2.0)
    rho1 = np.array([1.0, -1.0])
    rho2 = np.array([0.0, 1.0])
    drho1, drho2 = rho_derivative(rho1, rho2, np.array([1.0, 0.0]), np.zeros(2), w)
    assert drho1.tolist() == [-1.0, 2.0]
    assert drho2.tolist() == [0.5, -2.0]


def random_weights(rng: np.random.Generator) -> MacroWeights:
    return MacroWeights(
        gamma_dp=rng.uniform(0.05, 2.0),
        gamma_dv=rng.uniform(0.05, 2.0),
        a=rng.uniform(0.0, 2.0),
        b=rng.uniform(0.0, 2.0),
        lambda1=1.0,
        lambda2=1.0,
    )


def random_prefix(
    rng: np.random.Generator, dp_bar: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Случайная колонна: dp, dv и нормы отклонений |χ̃_j| (ρ тоже случайные)."""

    n = int(rng.integers(1, 25))
    scale = rng.uniform(0.1, 5.0)
    dp = -dp_bar + rng.normal(0.0, scale, n)
    dv = rng.normal(0.0, scale, n)
    rho = rng.normal(0.0, scale, (n, 2))
    norms = np.sqrt((dp + dp_bar) ** 2 + dv**2 + (rho**2).sum(axis=1))
    return dp, dv, norms


def test_variance_is_bounded_by_range() -> None:
    rng = np.random.default_rng(11)
    for _ in range(2000):
        values = rng.normal(0.0, rng.uniform(0.1, 10.0), int(rng.integers(1, 30)))
        _, variances = prefix_statistics(values)
        for i, var in enumerate(variances):
            head = values[: i + 1]
            bound = 0.25 * (head.max() - head.min()) ** 2
            assert var <= bound + 1e-12 * (1.0 + bound)


def test_variance_is_translation_invariant() -> None:
    rng = np.random.default_rng(12)
    for _ in range(500):
        values = rng.normal(0.0, 3.0, int(rng.integers(1, 20)))
        shift = rng.uniform(-50.0, 50.0)
        _, base = prefix_statistics(values)
        _, shifted = prefix_statistics(values + shift)
        assert shifted == pytest.approx(base, abs=1e-9)


def test_psi_bounded_by_largest_deviation() -> None:
    rng = np.random.default_rng(13)
    dp_bar = 10.0
    for _ in range(2000):
        w = random_weights(rng)
        dp, dv, norms = random_prefix(rng, dp_bar)
        signals = macro_signals(dp, dv, dp_bar, w)
        lhs = w.a * np.abs(signals.psi_dp) + w.b * np.abs(signals.psi_dv)
        rhs = (w.a * w.gamma_dp + w.b * w.gamma_dv) * np.maximum.accumulate(norms)
        assert (lhs <= rhs + 1e-12).all()


def test_psi_bounded_by_prefix_sum() -> None:
    rng = np.random.default_rng(14)
    dp_bar = 10.0
    for _ in range(2000):
        w = random_weights(rng)
        dp, dv, norms = random_prefix(rng, dp_bar)
        signals = macro_signals(dp, dv, dp_bar, w)
        lhs = w.a * np.abs(signals.psi_dp) + w.b * np.abs(signals.psi_dv)
        counts = np.arange(1, dp.size + 1)
        peak = max(w.a * w.gamma_dp, w.b * w.gamma_dv)
        rhs = 2.0 / np.sqrt(counts) * peak * np.cumsum(norms)
        assert (lhs <= rhs + 1e-12).all()


def test_unforced_rho_stays_at_zero(params: ControllerParams) -> None:
    w = params.weights

    def unforced(t: float, y: np.ndarray) -> np.ndarray:
        drho1, drho2 = rho_derivative(y[:3], y[3:], np.zeros(3), np.zeros(3), w)
        return np.concatenate((drho1, drho2))

    y = np.zeros(6)
    for k in range(1000):
        y = rk4_step(y, 0.01 * k, 0.01, unforced)
    assert y.tolist() == [0.0] * 6
