from __future__ import annotations

from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from newsbench.ingest.records import ConsolidatedRecord

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def make_benchmark_records(count: int, start: datetime | None = None) -> list[ConsolidatedRecord]:
    """Deterministic benchmark-style records, one hour apart, labels alternating."""
    if start is None:
        start = datetime(2022, 10, 1, tzinfo=timezone.utc)
    records = []
    for i in range(count):
        records.append(
            ConsolidatedRecord(
                id=f"bench-{i:05d}",
                dataset="benchmark",
                text=f"Benchmark story number {i} about the election cycle and turnout figures.",
                label=i % 2,
                published_at=start + timedelta(hours=i),
            )
        )
    return records
