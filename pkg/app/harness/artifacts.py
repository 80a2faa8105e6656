"""Файлы результатов.

- trajectory.csv: колонка t, затем для каждого автомобиля i
  p_i, v_i, u_ctrl_i, u_app_i, dp_i, dv_i, rho1_i, rho2_i;
  числа пишутся через repr, то есть с полной двойной точностью,
- certificate.txt (строки key=value) и certificate.json с теми же полями,
- metrics.json, sweep.json,
- trajectory_long.csv (t, vehicle, signal, value) для построения графиков.

Запись в один и тот же путь сериализуется блокировкой на путь.
"""

from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from threading import Lock
from typing import Any

from pydantic import BaseModel

from app.certify.certificate import Certificate
from app.dynamics.simulation import Trajectory

logger = logging.getLogger("platoon.artifacts")

TRAJECTORY_SIGNALS = ("p", "v", "u_ctrl", "u_app", "dp", "dv", "rho1", "rho2")

_registry_lock = Lock()
_path_locks: dict[Path, Lock] = {}


class ArtifactWriteError(RuntimeError):
    """Не удалось записать или прочитать файл результатов."""

    def __init__(self, path: Path, reason: OSError | ValueError) -> None:
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path


def _lock_for(path: Path) -> Lock:
    key = path.resolve()
    with _registry_lock:
        lock = _path_locks.get(key)
        if lock is None:
            lock = _path_locks[key] = Lock()
        return lock


@contextmanager
def _guarded(path: Path) -> Iterator[None]:
    with _lock_for(path):
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            yield
        except (OSError, ValueError) as exc:
            raise ArtifactWriteError(path, exc) from exc


def trajectory_header(n_vehicles: int) -> list[str]:
    header = ["t"]
    for i in range(n_vehicles):
        header.extend(f"{name}_{i}" for name in TRAJECTORY_SIGNALS)
    return header


def write_trajectory(traj: Trajectory, path: str | Path) -> Path:
    """Записать траекторию в CSV (одна строка на отсчёт)."""

    target = Path(path)
    columns = [getattr(traj, name) for name in TRAJECTORY_SIGNALS]
    with _guarded(target), target.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(trajectory_header(traj.n_vehicles))
        for k in range(traj.t.size):
            row = [repr(float(traj.t[k]))]
            for i in range(traj.n_vehicles):
                row.extend(repr(float(col[k, i])) for col in columns)
            writer.writerow(row)
    logger.info("trajectory written: %s (%d rows)", target, traj.t.size)
    return target


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "null"
    if isinstance(value, (tuple, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def write_certificate(cert: Certificate, path: str | Path) -> tuple[Path, Path]:
    """Записать отчёт key=value и его JSON-двойник (тот же путь, .json)."""

    target = Path(path)
    twin = target.with_suffix(".json")
    fields = cert.model_dump()
    with _guarded(target), target.open("w", encoding="utf-8") as fh:
        for key, value in fields.items():
            fh.write(f"{key}={_format_value(value)}\n")
    _write_json(cert, twin)
    logger.info("certificate written: %s, %s", target, twin)
    return target, twin


def _write_json(model: BaseModel, target: Path) -> None:
    with _guarded(target), target.open("w", encoding="utf-8") as fh:
        fh.write(model.model_dump_json(indent=2))
        fh.write("\n")


def write_json(model: BaseModel, path: str | Path) -> Path:
    """Записать pydantic-модель (метрики, отчёт серии) в JSON."""

    target = Path(path)
    _write_json(model, target)
    logger.info("json written: %s", target)
    return target


def write_long_report(trajectory_csv: str | Path, path: str | Path) -> Path:
    """Развернуть trajectory.csv в длинный формат t, vehicle, signal, value.

Значения копируются как строки, без повторного форматирования.
"""
    source = Path(trajectory_csv)
    target = Path(path)
    try:
        with source.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ArtifactWriteError(source, exc) from exc
    if not rows or not rows[0] or rows[0][0] != "t":
        raise ArtifactWriteError(source, ValueError("not a trajectory csv"))

    columns: list[tuple[str, str]] = []
    for name in rows[0][1:]:
        signal, _, vehicle = name.rpartition("_")
        columns.append((vehicle, signal))

    with _guarded(target), target.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "vehicle", "signal", "value"])
        for row in rows[1:]:
            t = row[0]
            for (vehicle, signal), value in zip(columns, row[1:]):
                writer.writerow([t, vehicle, signal, value])
    logger.info("long report written: %s", target)
    return target
