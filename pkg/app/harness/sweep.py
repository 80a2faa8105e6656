"""Серия прогонов одного сценария при разных размерах колонны.

Каждый размер N прогоняется независимо в пуле потоков, с зерном seed ^ N,
чтобы закон начальных условий был одинаковым, а выборки — разными.
Результаты собираются в порядке входного списка размеров.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import Future, ThreadPoolExecutor

from pydantic import BaseModel, ConfigDict

from app.certify.gain import iss_gain
from app.dynamics.simulation import simulate

from .metrics import Metrics, compute_metrics
from .scenario import Scenario

logger = logging.getLogger("platoon.sweep")


class SweepRunError(RuntimeError):
    """Ошибка прогона для конкретного N (исходное исключение — в __cause__)."""

    def __init__(self, n_followers: int, reason: BaseException) -> None:
        super().__init__(f"sweep run failed for N={n_followers}: {reason}")
        self.n_followers = n_followers


class SweepEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_followers: int
    seed: int
    platoon_peak: float
    amplification: tuple[float, ...]
    residual: float


class SweepReport(BaseModel):
    """Пики колонны по размерам и итоговый вердикт.

peak_variation = (max − min)/max по пикам; passed — вариация строго меньше
tolerance и параметры регулятора сертифицированы (γ̃ < 1).
"""

    model_config = ConfigDict(frozen=True)

    entries: tuple[SweepEntry, ...]
    peak_variation: float
    tolerance: float
    gamma_tilde: float
    string_stable: bool
    passed: bool


def scenario_for_size(base: Scenario, n_followers: int) -> Scenario:
    """Тот же сценарий с другим N и зерном seed ^ N (с полной валидацией)."""

    data = base.model_dump()
    data.update(n_followers=n_followers, seed=base.seed ^ n_followers)
    return Scenario.model_validate(data)


def _run(base: Scenario, n_followers: int) -> tuple[Scenario, Metrics]:
    scenario = scenario_for_size(base, n_followers)
    traj = simulate(scenario)
    return scenario, compute_metrics(
        traj, scenario.phase_starts, scenario.settle_tolerance
    )


def string_stability_sweep(
    base: Scenario,
    sizes: Sequence[int],
    tolerance: float = 0.05,
    workers: int = 4,
) -> SweepReport:
    """Прогнать base для каждого N из sizes и сравнить пики колонны."""

    if not sizes:
        raise ValueError("sizes must be non-empty")
    logger.info("sweep: sizes=%s workers=%d", list(sizes), workers)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures: list[Future[tuple[Scenario, Metrics]]] = [
            pool.submit(_run, base, n) for n in sizes
        ]
        entries: list[SweepEntry] = []
        for n, future in zip(sizes, futures):
            try:
                scenario, metrics = future.result()
            except Exception as exc:
                raise SweepRunError(n, exc) from exc
            entries.append(
                SweepEntry(
                    n_followers=n,
                    seed=scenario.seed,
                    platoon_peak=metrics.platoon_peak,
                    amplification=metrics.amplification,
                    residual=metrics.residual,
                )
            )
            logger.info("sweep: N=%d peak=%.6g", n, metrics.platoon_peak)

    peaks = [e.platoon_peak for e in entries]
    top = max(peaks)
    variation = (top - min(peaks)) / top if top > 0.0 else 0.0
    gain = iss_gain(base.params)
    passed = variation < tolerance and gain.string_stable
    if variation >= tolerance:
        logger.warning("sweep: peak variation %.3g exceeds %.3g", variation, tolerance)
    if not gain.string_stable:
        logger.warning(
            "sweep: gamma_tilde=%.6g is outside the certified region", gain.gamma_tilde
        )
    return SweepReport(
        entries=tuple(entries),
        peak_variation=variation,
        tolerance=tolerance,
        gamma_tilde=gain.gamma_tilde,
        string_stable=gain.string_stable,
        passed=passed,
    )
