"""Import adapter for externally produced predictions (e.g. transformer runs).

File format: JSON-Lines with a sidecar header line {"model_name": ...}
followed by one {"record_id": ..., "label": 0|1} object per line.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

from newsbench.errors import InputError


def write_external_predictions(
    model_name: str,
    predictions: Iterable[tuple[str, int]],
    path: str | Path,
) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps({"model_name": model_name}) + "\n")
        for record_id, label in predictions:
            handle.write(json.dumps({"record_id": record_id, "label": label}) + "\n")


def import_external_predictions(
    path: str | Path,
    known_record_ids: Optional[Sequence[str]] = None,
    strict: bool = False,
) -> tuple[str, list[tuple[str, int]]]:
    """Read and validate a predictions file.

    Labels must be 0 or 1. When known_record_ids is given, unmatched ids are
    dropped with a report, or rejected outright in strict mode.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = [json.loads(line) for line in lines if line.strip()]
    if not rows:
        raise InputError(f"{path}: empty predictions file")

    model_name = "external"
    if "model_name" in rows[0] and "record_id" not in rows[0]:
        model_name = str(rows[0]["model_name"])
        rows = rows[1:]

    predictions: list[tuple[str, int]] = []
    for index, row in enumerate(rows, start=1):
        if "record_id" not in row or "label" not in row:
            raise InputError(f"{path}: line {index + 1} needs record_id and label")
        label = row["label"]
        if label not in (0, 1):
            raise InputError(f"{path}: record {row['record_id']!r} has label {label!r}, must be 0 or 1")
        predictions.append((str(row["record_id"]), int(label)))

    if known_record_ids is not None:
        known = set(known_record_ids)
        unmatched = [rid for rid, _ in predictions if rid not in known]
        if unmatched:
            if strict:
                raise InputError(
                    f"{path}: {len(unmatched)} prediction(s) reference unknown record ids: "
                    + ", ".join(unmatched[:20])
                )
            predictions = [(rid, label) for rid, label in predictions if rid in known]
    return model_name, predictions
