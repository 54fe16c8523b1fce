"""Domain types for the unified corpus and their JSONL/CSV serialization.

The on-disk corpus is JSON-Lines, one record per line, with the field names
id, dataset, text, label, url, published_at (RFC 3339), keyword_group.
Optional fields are omitted when unset; label is omitted when the record is
unlabeled.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional

from newsbench.errors import InputError


@dataclass(frozen=True)
class KeywordGroup:
    """A named list of keyword phrases used to categorize articles."""

    id: str
    name: str
    keywords: tuple[str, ...]

    def __post_init__(self):
        if not self.id:
            raise InputError("keyword group id must be non-empty")
        cleaned = tuple(k.strip().lower() for k in self.keywords)
        if not cleaned or any(not k for k in cleaned):
            raise InputError(f"group {self.id!r}: keywords must be non-empty after trimming")
        object.__setattr__(self, "keywords", cleaned)


@dataclass(frozen=True)
class RawArticle:
    """One feed entry before snippet extraction and scrubbing.

    published_at is None when the entry carried no parseable date; callers
    treat such articles as undated.
    """

    feed_url: str
    title: str
    link: str
    published_at: Optional[datetime]
    body_text: str = ""


def as_utc(value: Optional[datetime]) -> Optional[datetime]:
    """Normalize a datetime to UTC; naive datetimes are taken as UTC."""
    if value is None:
        return None
    if value.tzinfo is None:
        return value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc)


def format_rfc3339(value: datetime) -> str:
    value = as_utc(value)
    assert value is not None
    return value.strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_rfc3339(value: str) -> datetime:
    text = value.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise InputError(f"bad timestamp {value!r}: {exc}") from exc
    return as_utc(parsed)


@dataclass
class ConsolidatedRecord:
    """One news item in the unified corpus schema.

    Invariants enforced on construction: non-empty scrubbed text with no
    residual PII, and a label of 0 (real), 1 (fake), or None (unlabeled).
    """

    id: str
    dataset: str
    text: str
    label: Optional[int] = None
    url: Optional[str] = None
    published_at: Optional[datetime] = None
    keyword_group: Optional[str] = None

    def __post_init__(self):
        from newsbench.ingest.text import contains_pii

        if not self.id:
            raise InputError("record id must be non-empty")
        if not self.text or not self.text.strip():
            raise InputError(f"record {self.id!r}: text must be non-empty")
        if contains_pii(self.text):
            raise InputError(f"record {self.id!r}: text contains unscrubbed PII")
        if self.label is not None and self.label not in (0, 1):
            raise InputError(f"record {self.id!r}: label must be 0 or 1, got {self.label!r}")
        self.published_at = as_utc(self.published_at)

    def to_json_dict(self) -> dict:
        out: dict = {"id": self.id, "dataset": self.dataset, "text": self.text}
        if self.label is not None:
            out["label"] = self.label
        if self.url is not None:
            out["url"] = self.url
        if self.published_at is not None:
            out["published_at"] = format_rfc3339(self.published_at)
        if self.keyword_group is not None:
            out["keyword_group"] = self.keyword_group
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConsolidatedRecord":
        try:
            published = data.get("published_at")
            return cls(
                id=str(data["id"]),
                dataset=str(data.get("dataset", "")),
                text=data["text"],
                label=data.get("label"),
                url=data.get("url"),
                published_at=parse_rfc3339(published) if published else None,
                keyword_group=data.get("keyword_group"),
            )
        except KeyError as exc:
            raise InputError(f"record is missing required field {exc}") from exc


@dataclass
class IngestConfig:
    """Parameters of one ingestion run."""

    window_start: datetime
    window_end: datetime
    max_sentences: int = 5
    benchmark_limit: int = 5000
    feeds: list[tuple[str, Optional[str]]] = field(default_factory=list)

    def __post_init__(self):
        self.window_start = as_utc(self.window_start)
        self.window_end = as_utc(self.window_end)
        if self.window_start >= self.window_end:
            raise InputError("window_start must precede window_end")
        if self.max_sentences < 1:
            raise InputError("max_sentences must be >= 1")
        if self.benchmark_limit < 1:
            raise InputError("benchmark_limit must be >= 1")


def write_corpus(records: Iterable[ConsolidatedRecord], path: str | Path) -> int:
    """Write records as JSON-Lines; returns the number written."""
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record.to_json_dict(), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_corpus(path: str | Path) -> list[ConsolidatedRecord]:
    records = []
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{line_no}: invalid JSON: {exc}") from exc
            record = ConsolidatedRecord.from_json_dict(data)
            if record.id in seen_ids:
                raise InputError(f"{path}:{line_no}: duplicate record id {record.id!r}")
            seen_ids.add(record.id)
            records.append(record)
    return records


def export_csv(records: Iterable[ConsolidatedRecord], path: str | Path) -> int:
    """Write the Dataset,Text,Label consolidation view."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["Dataset", "Text", "Label"])
        for record in records:
            writer.writerow([record.dataset, record.text, "" if record.label is None else record.label])
            count += 1
    return count
