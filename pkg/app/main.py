"""Точка входа: командная строка симулятора.

python -m app.main <команда> ...

Команды:
- simulate <config> [--out DIR]: прогон сценария, trajectory.csv и metrics.json,
- certify <config> [--out DIR]: сертификат certificate.txt / certificate.json,
- sweep <config> --sizes 5,11,21,41 [--workers K] [--out DIR]: серия по N, sweep.json,
- report <dir>: trajectory.csv из каталога в длинный формат trajectory_long.csv.

Коды возврата: 0 — успех, 1 — проверка серии по N не пройдена
(разброс пиков или γ̃ ≥ 1), 2 — ошибка входных данных, ввода-вывода или сертификата.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from app.certify.certificate import build_certificate
from app.config import Settings
from app.dynamics.simulation import simulate
from app.harness.artifacts import (
    ArtifactWriteError,
    write_certificate,
    write_json,
    write_long_report,
    write_trajectory,
)
from app.harness.metrics import asymptotic_check, compute_metrics
from app.harness.scenario import load_scenario
from app.harness.sweep import SweepRunError, string_stability_sweep
from app.logging_config import configure_logging

logger = logging.getLogger("platoon.cli")


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad sizes list: {text!r}") from exc
    if not sizes or min(sizes) < 0:
        raise argparse.ArgumentTypeError(f"bad sizes list: {text!r}")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platoon", description="Mesoscopic platoon simulator and certificates"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write the trajectory")
    sim.add_argument("config", type=Path)
    sim.add_argument("--out", type=Path, default=None)

    cert = sub.add_parser("certify", help="compute the stability certificate")
    cert.add_argument("config", type=Path)
    cert.add_argument("--out", type=Path, default=None)

    sweep = sub.add_parser("sweep", help="run the scenario for several platoon sizes")
    sweep.add_argument("config", type=Path)
    sweep.add_argument("--sizes", type=_parse_sizes, default=[5, 11, 21, 41])
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--out", type=Path, default=None)

    report = sub.add_parser("report", help="convert trajectory.csv to long format")
    report.add_argument("directory", type=Path)
    return parser


def _cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    scenario = load_scenario(args.config)
    out = args.out or Path(settings.output_dir)
    traj = simulate(scenario)
    metrics = compute_metrics(traj, scenario.phase_starts, scenario.settle_tolerance)
    write_trajectory(traj, out / "trajectory.csv")
    write_json(metrics, out / "metrics.json")
    t_from = max(0.0, scenario.t_end - settings.asymptotic_window_s)
    converged = asymptotic_check(traj, t_from, settings.asymptotic_eps)
    print(
        f"platoon_peak={metrics.platoon_peak!r} residual={metrics.residual!r} "
        f"min_spacing={metrics.min_spacing!r} converged={str(converged).lower()}"
    )
    return 0


def _cmd_certify(args: argparse.Namespace, settings: Settings) -> int:
    scenario = load_scenario(args.config)
    out = args.out or Path(settings.output_dir)
    cert = build_certificate(scenario.params, scenario.n_followers)
    text_path, _ = write_certificate(cert, out / "certificate.txt")
    sys.stdout.write(text_path.read_text(encoding="utf-8"))
    return 0


def _cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    scenario = load_scenario(args.config)
    out = args.out or Path(settings.output_dir)
    report = string_stability_sweep(
        scenario,
        args.sizes,
        tolerance=settings.sweep_peak_tolerance,
        workers=args.workers or settings.sweep_workers,
    )
    write_json(report, out / "sweep.json")
    for entry in report.entries:
        print(f"N={entry.n_followers} platoon_peak={entry.platoon_peak!r}")
    stable = str(report.string_stable).lower()
    verdict = str(report.passed).lower()
    print(
        f"peak_variation={report.peak_variation!r} "
        f"gamma_tilde={report.gamma_tilde!r} string_stable={stable} passed={verdict}"
    )
    return 0 if report.passed else 1


def _cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    directory: Path = args.directory
    write_long_report(directory / "trajectory.csv", directory / "trajectory_long.csv")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
    "report": _cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Разобрать аргументы, настроить логирование и выполнить команду."""

    args = build_parser().parse_args(argv)
    settings = Settings()
    configure_logging(settings.log_level)
    try:
        return _COMMANDS[args.command](args, settings)
    except (ValueError, OSError, ArtifactWriteError, SweepRunError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        return 2
    except Exception:
        logger.exception("%s crashed", args.command)
        raise


if __name__ == "__main__":
    sys.exit(main())
