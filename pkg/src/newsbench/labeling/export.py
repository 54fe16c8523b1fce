"""Export of the adjudicated corpus, gated on inter-annotator agreement."""

from __future__ import annotations

import logging
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from newsbench.errors import ExportBlockedError
from newsbench.ingest.records import ConsolidatedRecord, write_corpus
from newsbench.labeling.types import GATE_MIN_ITEMS, AdjudicatedLabel, AgreementReport

logger = logging.getLogger(__name__)

RESOLVED_STATUSES = ("agreed", "adjudicated_by_third")


def export_labeled_corpus(
    corpus: Sequence[ConsolidatedRecord],
    adjudications: dict[str, AdjudicatedLabel],
    gate_reports: Sequence[AgreementReport],
    out_path: str | Path,
    strict: bool = True,
    min_items: int = GATE_MIN_ITEMS,
) -> list[ConsolidatedRecord]:
    """Write the labeled corpus as JSONL, with final labels from adjudication.

    Refused outright when any reviewer pair with at least ``min_items`` shared
    items fails the kappa gate. In strict mode, any unresolved record
    (unreviewed or still disagreeing) also blocks the export; otherwise
    unresolved records are skipped with a log line.
    """
    failing = [
        report for report in gate_reports
        if report.pair is not None and report.n_items >= min_items and not report.passes_gate
    ]
    if failing:
        pairs = tuple(report.pair for report in failing)
        raise ExportBlockedError(
            "agreement gate failed for reviewer pair(s): "
            + ", ".join(f"{a}+{b} (kappa={r.kappa:.3f}, n={r.n_items})" for (a, b), r in zip(pairs, failing)),
            failing_pairs=pairs,
        )

    unresolved = [
        record.id
        for record in corpus
        if record.id not in adjudications
        or adjudications[record.id].status not in RESOLVED_STATUSES
    ]
    if unresolved and strict:
        raise ExportBlockedError(
            f"{len(unresolved)} record(s) lack a resolved label: {', '.join(unresolved[:20])}",
            record_ids=tuple(unresolved),
        )
    if unresolved:
        logger.warning("skipping %d unresolved record(s) in non-strict export", len(unresolved))

    labeled = [
        replace(record, label=adjudications[record.id].final_label)
        for record in corpus
        if record.id not in set(unresolved)
    ]
    write_corpus(labeled, out_path)
    return labeled
