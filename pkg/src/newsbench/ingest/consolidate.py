"""Merge curated feed records with benchmark-sourced records into one corpus."""

from __future__ import annotations

import logging
import re
from datetime import datetime, timezone
from typing import Sequence

from newsbench.errors import EmptyCorpusError, InputError
from newsbench.ingest.records import ConsolidatedRecord, IngestConfig

logger = logging.getLogger(__name__)

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def normalize_for_dedup(text: str) -> str:
    """Dedup key: lowercased text with whitespace runs collapsed."""
    return re.sub(r"\s+", " ", text.lower()).strip()


def _chronological_key(record: ConsolidatedRecord):
    # undated records sort after all dated ones; sort stability keeps their input order
    if record.published_at is None:
        return (1, _EPOCH)
    return (0, record.published_at)


def consolidate(
    curated: Sequence[ConsolidatedRecord],
    benchmark: Sequence[ConsolidatedRecord],
    config: IngestConfig,
) -> list[ConsolidatedRecord]:
    """Build the unified corpus.

    Benchmark records are sorted ascending by publication date and truncated
    to config.benchmark_limit. Curated records are kept only inside
    [window_start, window_end]; undated curated records are excluded.
    Duplicates (equal normalized text) are removed, first occurrence winning,
    with curated records ahead of benchmark ones.
    """
    kept_curated = []
    for record in curated:
        if record.published_at is None:
            logger.warning("curated record %s has no date; excluded from the window", record.id)
            continue
        if config.window_start <= record.published_at <= config.window_end:
            kept_curated.append(record)

    bench_sorted = sorted(benchmark, key=_chronological_key)[: config.benchmark_limit]

    corpus: list[ConsolidatedRecord] = []
    seen_texts: set[str] = set()
    seen_ids: set[str] = set()
    for record in list(kept_curated) + bench_sorted:
        key = normalize_for_dedup(record.text)
        if key in seen_texts:
            continue
        if record.id in seen_ids:
            raise InputError(f"duplicate record id {record.id!r} for distinct texts")
        seen_texts.add(key)
        seen_ids.add(record.id)
        corpus.append(record)

    if not corpus:
        raise EmptyCorpusError("consolidation produced no records")
    return corpus
