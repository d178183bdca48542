"""Rendering of reports as JSON, CSV or human-readable tables."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from .models import (
    FigureSeries,
    OutputFormat,
    ThermoReport,
    VerificationSuite,
    to_canonical_json,
)
from .storage import FileSystemStorage

HUMAN_DIGITS = 6


def format_csv_value(value: Any) -> str:
    """Floats at 17 significant digits, exact values as p/q."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float | np.floating):
        return f"{float(value):.17g}"
    if isinstance(value, Fraction):
        return str(value)
    if value is None:
        return ""
    return str(value)


def format_human_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float | Fraction | np.floating):
        return f"{float(value):.{HUMAN_DIGITS}g}"
    return str(value)


def _flatten(model: BaseModel) -> dict[str, Any]:
    """One flat row: lists expand to name_1..name_k, nested models are skipped."""
    row: dict[str, Any] = {}
    for name in type(model).model_fields:
        value = getattr(model, name)
        if value is None or isinstance(value, BaseModel | dict):
            continue
        if isinstance(value, list | tuple):
            if value and isinstance(value[0], BaseModel):
                continue
            for k, item in enumerate(value, start=1):
                row[f"{name}_{k}"] = item
        elif hasattr(value, "value"):
            row[name] = value.value
        else:
            row[name] = value
    return row


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_csv_value(v) for v in row])
    return buf.getvalue()


def figure_csv(series: FigureSeries) -> str:
    """Header `<abscissa>,<curve>...`, one row per grid point."""
    names = list(series.curves)
    rows = [
        [x, *(series.curves[name][k] for name in names)]
        for k, x in enumerate(series.abscissa)
    ]
    return _csv_text([series.abscissa_name, *names], rows)


def verification_csv(suite: VerificationSuite) -> str:
    header = ["identity", "p", "n", "passed", "exact", "max_residual", "checks"]
    rows = [[getattr(r, h) for h in header] for r in suite.reports]
    return _csv_text(header, rows)


def sweep_csv(temperatures: Sequence[float], reports: Sequence[ThermoReport]) -> str:
    """One row per temperature: tau, Z, N, theta_i and E when present."""
    flat = [_flatten(report) for report in reports]
    keys = [k for k in flat[0] if k not in ("p", "n", "route", "clamped")]
    rows = [
        [tau, *(row.get(k) for k in keys)]
        for tau, row in zip(temperatures, flat, strict=True)
    ]
    return _csv_text(["tau", *keys], rows)


def samples_csv(states: np.ndarray) -> str:
    """Raw occupation vectors, one row per kept sample."""
    header = [f"theta_{i}" for i in range(1, states.shape[1] + 1)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(states.tolist())
    return buf.getvalue()


def render_csv(obj: BaseModel) -> str:
    if isinstance(obj, FigureSeries):
        return figure_csv(obj)
    if isinstance(obj, VerificationSuite):
        return verification_csv(obj)
    row = _flatten(obj)
    return _csv_text(list(row), [list(row.values())])


def render_json(obj: BaseModel | list[BaseModel]) -> str:
    return to_canonical_json(obj) + "\n"


def human_table(obj: BaseModel) -> Table:
    """A rich table at six significant digits."""
    if isinstance(obj, VerificationSuite):
        table = Table(title=f"Verification p={obj.p} n={obj.n} suite={obj.suite}")
        for column in ("Identity", "Passed", "Exact", "Checks", "Max residual"):
            table.add_column(column)
        for r in obj.reports:
            table.add_row(
                r.identity,
                format_human_value(r.passed),
                format_human_value(r.exact),
                str(r.checks),
                format_human_value(r.max_residual),
            )
        return table
    if isinstance(obj, FigureSeries):
        table = Table(title=f"Figure {obj.figure_id}")
        names = list(obj.curves)
        for column in (obj.abscissa_name, *names):
            table.add_column(column, justify="right")
        for k, x in enumerate(obj.abscissa):
            table.add_row(
                format_human_value(x),
                *(format_human_value(obj.curves[name][k]) for name in names),
            )
        return table
    table = Table(title=type(obj).__name__)
    table.add_column("Field", style="cyan")
    table.add_column("Value", justify="right")
    for key, value in _flatten(obj).items():
        table.add_row(key, format_human_value(value))
    return table


def render_human(obj: BaseModel) -> str:
    buf = io.StringIO()
    console = Console(file=buf, width=120, color_system=None, force_terminal=False)
    console.print(human_table(obj))
    return buf.getvalue()


def render(obj: BaseModel, fmt: OutputFormat) -> str:
    """Serialize a report in the requested format."""
    if fmt is OutputFormat.JSON:
        return render_json(obj)
    if fmt is OutputFormat.CSV:
        return render_csv(obj)
    return render_human(obj)


def emit(obj: BaseModel, fmt: OutputFormat, path: Path | None = None) -> str:
    """Render a report and, when a path is given, write it atomically.

    Raises:
        OSError: if the path is not writable
    """
    text = render(obj, fmt)
    if path is not None:
        write_artifact(path, text)
    return text


def write_artifact(path: Path, text: str) -> Path:
    return FileSystemStorage(path.parent).save_text(path.name, text)
