"""Leaderboard assembly and report rendering.

The markdown report mirrors the benchmark layout: a results table with the
columns Model, Accuracy, Precision, Recall, F1 Score sorted by F1 (column
maxima bolded), followed by a confusion-rate table with TP/FN/FP as whole
percentages of the evaluated samples. TN is included by default and can be
switched off to reproduce the three-column shape. CSV and JSON carry the
unrounded values; the JSON schema is versioned.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from newsbench.errors import InputError
from newsbench.evaluation.metrics import ConfusionMatrix, MetricsReport

REPORT_SCHEMA_VERSION = 1
METRIC_COLUMNS = ("accuracy", "precision", "recall", "f1")
RENDER_FORMATS = ("markdown", "csv", "json")


@dataclass(frozen=True)
class Leaderboard:
    rows: tuple[MetricsReport, ...]
    column_maxima: dict  # metric name -> max value over rows

    def is_max(self, report: MetricsReport, column: str) -> bool:
        return getattr(report, column) == self.column_maxima[column]


def leaderboard(reports: Sequence[MetricsReport]) -> Leaderboard:
    """Sort by F1 descending, ties by accuracy then model name."""
    if not reports:
        raise InputError("cannot build a leaderboard from zero reports")
    ordered = sorted(reports, key=lambda r: (-r.f1, -r.accuracy, r.model_name))
    maxima = {column: max(getattr(r, column) for r in ordered) for column in METRIC_COLUMNS}
    return Leaderboard(rows=tuple(ordered), column_maxima=maxima)


def _percent(value: int, total: int) -> str:
    return f"{round(100 * value / total)}%"


def _markdown(
    board: Leaderboard,
    confusion_rows: dict[str, ConfusionMatrix],
    include_tn: bool,
) -> str:
    lines = ["# Evaluation Report", "", "## Results (sorted by F1 Score)", ""]
    lines.append("| Model | Accuracy | Precision | Recall | F1 Score |")
    lines.append("| --- | --- | --- | --- | --- |")
    for report in board.rows:
        cells = [report.model_name]
        for column in METRIC_COLUMNS:
            text = f"{getattr(report, column):.4f}"
            if board.is_max(report, column):
                text = f"**{text}**"
            cells.append(text)
        lines.append("| " + " | ".join(cells) + " |")

    if confusion_rows:
        lines += ["", "## Confusion rates (percent of evaluated samples)", ""]
        header = "| Model | TP% | FN% | FP% |"
        divider = "| --- | --- | --- | --- |"
        if include_tn:
            header = "| Model | TP% | FN% | FP% | TN% |"
            divider = "| --- | --- | --- | --- | --- |"
        lines.append(header)
        lines.append(divider)
        for report in board.rows:
            cm = confusion_rows.get(report.model_name)
            if cm is None:
                continue
            cells = [
                report.model_name,
                _percent(cm.tp, cm.total),
                _percent(cm.fn, cm.total),
                _percent(cm.fp, cm.total),
            ]
            if include_tn:
                cells.append(_percent(cm.tn, cm.total))
            lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    return "\n".join(lines)


def _csv(board: Leaderboard, confusion_rows: dict[str, ConfusionMatrix]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["model", "accuracy", "precision", "recall", "f1", "tp", "fn", "fp", "tn"])
    for report in board.rows:
        cm = confusion_rows.get(report.model_name)
        writer.writerow(
            [
                report.model_name,
                repr(report.accuracy),
                repr(report.precision),
                repr(report.recall),
                repr(report.f1),
                cm.tp if cm else "",
                cm.fn if cm else "",
                cm.fp if cm else "",
                cm.tn if cm else "",
            ]
        )
    return buffer.getvalue()


def _json(board: Leaderboard, confusion_rows: dict[str, ConfusionMatrix]) -> str:
    payload = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "leaderboard": [report.to_json_dict() for report in board.rows],
        "confusion": [
            {"model_name": name, **cm.to_json_dict(), "total": cm.total}
            for name, cm in sorted(confusion_rows.items())
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_report(
    board: Leaderboard,
    confusion_rows: Optional[dict[str, ConfusionMatrix]] = None,
    format: str = "markdown",
    include_tn: bool = True,
) -> str:
    if format not in RENDER_FORMATS:
        raise InputError(f"unknown report format {format!r}; expected one of {RENDER_FORMATS}")
    confusion_rows = confusion_rows or {}
    if format == "markdown":
        return _markdown(board, confusion_rows, include_tn)
    if format == "csv":
        return _csv(board, confusion_rows)
    return _json(board, confusion_rows)


def parse_json_report(text: str) -> tuple[list[MetricsReport], dict[str, ConfusionMatrix]]:
    payload = json.loads(text)
    if payload.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {payload.get('schema_version')!r}")
    reports = [
        MetricsReport(
            model_name=row["model_name"],
            accuracy=row["accuracy"],
            precision=row["precision"],
            recall=row["recall"],
            f1=row["f1"],
            degenerate_flags=frozenset(row.get("degenerate_flags", [])),
        )
        for row in payload["leaderboard"]
    ]
    matrices = {
        row["model_name"]: ConfusionMatrix(tp=row["tp"], fp=row["fp"], tn=row["tn"], fn=row["fn"])
        for row in payload.get("confusion", [])
    }
    return reports, matrices
