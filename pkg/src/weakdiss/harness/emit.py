"""Writing reports as JSON and CSV, atomically."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .experiments import Report

__all__ = ["EmitError", "emit", "report_json", "report_csv", "atomic_write"]

CSV_COLUMNS = ("t", "measured", "predicted_curve")


class EmitError(OSError):
    """Writing an output file failed."""


def report_json(report: Report) -> str:
    """Deterministic JSON; only the ``meta`` member varies between runs."""
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def report_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in report.series:
        x = row.get("t", row.get("r"))
        w.writerow([repr(float(x)), repr(float(row["measured"])), repr(float(row.get("predicted_curve", float("nan"))))])
    return buf.getvalue()


def atomic_write(path: Path, text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc}") from exc
    return path


def emit(report: Report, out_dir: str | Path, fmt: str = "json") -> list[Path]:
    """Write ``report`` under ``out_dir`` as ``<label>.json`` or ``<label>.csv``."""
    out_dir = Path(out_dir)
    if fmt == "json":
        return [atomic_write(out_dir / f"{report.config.label}.json", report_json(report))]
    if fmt == "csv":
        return [atomic_write(out_dir / f"{report.config.label}.csv", report_csv(report))]
    raise ValueError(f"unknown format {fmt!r}; use 'json' or 'csv'")
