"""Review assignment, the serialized-write workflow store, and adjudication.

State lives in an append-only JSON-Lines journal: every annotator,
assignment, review, supersede, and suggestion is one event line, and loading
replays the journal. Writes are serialized by a lock; reads see consistent
snapshots.
"""

from __future__ import annotations

import json
import random
import threading
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional, Sequence

from newsbench.errors import ConfigurationError, InputError, IntegrityError, ReviewConflictError
from newsbench.labeling.types import (
    AdjudicatedLabel,
    Annotator,
    Assignment,
    LabelSuggestion,
    Review,
)


def assign_reviews(
    record_ids: Sequence[str],
    annotators: Sequence[Annotator],
    seed: int,
) -> list[Assignment]:
    """Assign every record to two distinct annotators, load-balanced.

    Greedy least-loaded choice with a seeded priority order keeps the
    per-annotator spread within two assignments and makes the result a pure
    function of (record_ids, annotators, seed).
    """
    if len(annotators) < 2:
        raise ConfigurationError(f"need at least 2 annotators, got {len(annotators)}")
    ids = [a.id for a in annotators]
    if len(set(ids)) != len(ids):
        raise ConfigurationError("annotator ids must be unique")

    rng = random.Random(seed)
    priority_order = list(ids)
    rng.shuffle(priority_order)
    priority = {aid: i for i, aid in enumerate(priority_order)}
    load: Counter[str] = Counter({aid: 0 for aid in ids})

    assignments: list[Assignment] = []
    sequence = 0
    for record_id in record_ids:
        chosen = sorted(ids, key=lambda aid: (load[aid], priority[aid]))[:2]
        for annotator_id in chosen:
            load[annotator_id] += 1
            assignments.append(
                Assignment(record_id=record_id, annotator_id=annotator_id, sequence=sequence)
            )
            sequence += 1
    return assignments


def adjudicate(record_id: str, reviews: Sequence[Review]) -> AdjudicatedLabel:
    """Resolve a record from its reviews.

    Two agreeing reviews settle the label; a disagreement waits for a third
    review from a distinct annotator, after which the majority wins.
    """
    if len(reviews) not in (2, 3):
        raise InputError(f"record {record_id!r}: adjudication needs 2 or 3 reviews, got {len(reviews)}")
    annotator_ids = [r.annotator_id for r in reviews]
    if len(set(annotator_ids)) != len(annotator_ids):
        raise IntegrityError(f"record {record_id!r}: reviews must come from distinct annotators")

    first_two = reviews[:2]
    if first_two[0].label == first_two[1].label:
        return AdjudicatedLabel(record_id=record_id, final_label=first_two[0].label, status="agreed")
    if len(reviews) == 2:
        return AdjudicatedLabel(record_id=record_id, final_label=None, status="needs_adjudication")
    labels = [r.label for r in reviews]
    majority = 1 if sum(labels) >= 2 else 0
    return AdjudicatedLabel(
        record_id=record_id,
        final_label=majority,
        status="adjudicated_by_third",
        resolver_id=reviews[2].annotator_id,
    )


@dataclass
class SupersedeEvent:
    record_id: str
    annotator_id: str
    old_label: int
    new_label: int
    at: datetime


class WorkflowStore:
    """Labeling state with serialized writes and an append-only journal.

    Pass journal_path=None for a purely in-memory store (tests, dry runs).
    """

    def __init__(self, journal_path: str | Path | None = None):
        self._lock = threading.Lock()
        self.journal_path = Path(journal_path) if journal_path else None
        self.annotators: dict[str, Annotator] = {}
        self.assignments: dict[tuple[str, str], Assignment] = {}
        self.reviews: dict[tuple[str, str], Review] = {}
        self.suggestions: dict[str, LabelSuggestion] = {}
        self.supersedes: list[SupersedeEvent] = []
        self._sequence = 0
        if self.journal_path and self.journal_path.exists():
            self._replay()

    # -- journal ---------------------------------------------------------

    def _append(self, event: dict) -> None:
        if self.journal_path is None:
            return
        with open(self.journal_path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(event, ensure_ascii=False) + "\n")

    def _replay(self) -> None:
        with open(self.journal_path, "r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    self._apply(json.loads(line), replay=True)

    def _apply(self, event: dict, replay: bool = False) -> None:
        kind = event["event"]
        if kind == "annotator":
            annotator = Annotator(id=event["id"], display_name=event["display_name"], role=event["role"])
            self.annotators[annotator.id] = annotator
        elif kind == "assignment":
            assignment = Assignment(
                record_id=event["record_id"],
                annotator_id=event["annotator_id"],
                state=event.get("state", "pending"),
                sequence=event["sequence"],
                round=event.get("round", "first"),
            )
            self.assignments[(assignment.record_id, assignment.annotator_id)] = assignment
            self._sequence = max(self._sequence, assignment.sequence + 1)
        elif kind == "review":
            review = Review(
                record_id=event["record_id"],
                annotator_id=event["annotator_id"],
                label=event["label"],
                note=event.get("note"),
                submitted_at=datetime.fromisoformat(event["submitted_at"]) if event.get("submitted_at") else None,
            )
            self.reviews[(review.record_id, review.annotator_id)] = review
            key = (review.record_id, review.annotator_id)
            if key in self.assignments:
                self.assignments[key].state = "submitted"
        elif kind == "supersede":
            key = (event["record_id"], event["annotator_id"])
            old = self.reviews[key]
            self.supersedes.append(
                SupersedeEvent(
                    record_id=event["record_id"],
                    annotator_id=event["annotator_id"],
                    old_label=event["old_label"],
                    new_label=event["new_label"],
                    at=datetime.fromisoformat(event["at"]),
                )
            )
            self.reviews[key] = Review(
                record_id=old.record_id,
                annotator_id=old.annotator_id,
                label=event["new_label"],
                note=old.note,
                submitted_at=old.submitted_at,
            )
        elif kind == "suggestion":
            suggestion = LabelSuggestion(
                record_id=event["record_id"],
                suggested_label=event["suggested_label"],
                raw_response=event["raw_response"],
                model_name=event["model_name"],
                created_at=datetime.fromisoformat(event["created_at"]),
            )
            self.suggestions[suggestion.record_id] = suggestion
        else:
            raise InputError(f"unknown journal event {kind!r}")

    # -- writes ----------------------------------------------------------

    def add_annotator(self, annotator: Annotator) -> None:
        with self._lock:
            event = {
                "event": "annotator",
                "id": annotator.id,
                "display_name": annotator.display_name,
                "role": annotator.role,
            }
            self._apply(event)
            self._append(event)

    def add_assignments(self, assignments: Iterable[Assignment]) -> None:
        with self._lock:
            for assignment in assignments:
                key = (assignment.record_id, assignment.annotator_id)
                if key in self.assignments:
                    raise IntegrityError(f"assignment {key} already exists")
                first_round = [
                    a for a in self.assignments.values()
                    if a.record_id == assignment.record_id and a.round == "first"
                ]
                if assignment.round == "first" and len(first_round) >= 2:
                    raise IntegrityError(
                        f"record {assignment.record_id!r} already has two first-round assignments"
                    )
                event = {
                    "event": "assignment",
                    "record_id": assignment.record_id,
                    "annotator_id": assignment.annotator_id,
                    "sequence": self._sequence,
                    "round": assignment.round,
                }
                self._apply(event)
                self._append(event)

    def add_suggestion(self, suggestion: LabelSuggestion) -> None:
        with self._lock:
            event = {
                "event": "suggestion",
                "record_id": suggestion.record_id,
                "suggested_label": suggestion.suggested_label,
                "raw_response": suggestion.raw_response,
                "model_name": suggestion.model_name,
                "created_at": suggestion.created_at.isoformat(),
            }
            self._apply(event)
            self._append(event)

    def record_review(
        self,
        record_id: str,
        annotator_id: str,
        label: int,
        note: Optional[str] = None,
        at: Optional[datetime] = None,
    ) -> Review:
        """Store a review for a pending assignment.

        Identical resubmission is an idempotent no-op; a different label is a
        conflict (the stored review stands until an explicit supersede).
        """
        if label not in (0, 1):
            raise InputError(f"label must be 0 or 1, got {label!r}")
        with self._lock:
            key = (record_id, annotator_id)
            if key not in self.assignments:
                raise InputError(f"no assignment of record {record_id!r} to {annotator_id!r}")
            existing = self.reviews.get(key)
            if existing is not None:
                if existing.label == label:
                    return existing
                raise ReviewConflictError(record_id, annotator_id, existing.label, label)
            at = at or datetime.now(timezone.utc)
            event = {
                "event": "review",
                "record_id": record_id,
                "annotator_id": annotator_id,
                "label": label,
                "note": note,
                "submitted_at": at.isoformat(),
            }
            self._apply(event)
            self._append(event)
            return self.reviews[key]

    def supersede_review(
        self,
        record_id: str,
        annotator_id: str,
        new_label: int,
        at: Optional[datetime] = None,
    ) -> Review:
        """Explicit correction; both labels are kept in the audit trail."""
        if new_label not in (0, 1):
            raise InputError(f"label must be 0 or 1, got {new_label!r}")
        with self._lock:
            key = (record_id, annotator_id)
            existing = self.reviews.get(key)
            if existing is None:
                raise InputError(f"no stored review for {key}; nothing to supersede")
            at = at or datetime.now(timezone.utc)
            event = {
                "event": "supersede",
                "record_id": record_id,
                "annotator_id": annotator_id,
                "old_label": existing.label,
                "new_label": new_label,
                "at": at.isoformat(),
            }
            self._apply(event)
            self._append(event)
            return self.reviews[key]

    def add_third_review(
        self,
        record_id: str,
        annotator_id: str,
        label: int,
        note: Optional[str] = None,
        at: Optional[datetime] = None,
    ) -> Review:
        """Escalation review by an annotator outside the first-round pair."""
        first_pair = self.first_round_annotators(record_id)
        if annotator_id in first_pair:
            raise IntegrityError(
                f"annotator {annotator_id!r} already reviewed record {record_id!r} in the first round"
            )
        if len(first_pair) != 2:
            raise InputError(f"record {record_id!r} does not have two first-round assignments")
        current = self.adjudication_for(record_id)
        if current is None or current.status != "needs_adjudication":
            raise InputError(f"record {record_id!r} is not awaiting adjudication")
        self.add_assignments(
            [Assignment(record_id=record_id, annotator_id=annotator_id, round="third")]
        )
        return self.record_review(record_id, annotator_id, label, note=note, at=at)

    # -- reads -----------------------------------------------------------

    def first_round_annotators(self, record_id: str) -> list[str]:
        assignments = [
            a for a in self.assignments.values()
            if a.record_id == record_id and a.round == "first"
        ]
        return [a.annotator_id for a in sorted(assignments, key=lambda a: a.sequence)]

    def reviews_for(self, record_id: str) -> list[Review]:
        """Reviews in assignment order (first round first, then third)."""
        keys = sorted(
            (a.sequence, a.record_id, a.annotator_id)
            for a in self.assignments.values()
            if a.record_id == record_id and (a.record_id, a.annotator_id) in self.reviews
        )
        return [self.reviews[(rid, aid)] for _, rid, aid in keys]

    def pending_assignments(self, annotator_id: str) -> list[Assignment]:
        pending = [
            a for a in self.assignments.values()
            if a.annotator_id == annotator_id and a.state == "pending"
        ]
        return sorted(pending, key=lambda a: a.sequence)

    def adjudication_for(self, record_id: str) -> Optional[AdjudicatedLabel]:
        reviews = self.reviews_for(record_id)
        if len(reviews) < 2:
            return None
        return adjudicate(record_id, reviews)

    def adjudications(self) -> dict[str, AdjudicatedLabel]:
        out: dict[str, AdjudicatedLabel] = {}
        for record_id in sorted({a.record_id for a in self.assignments.values()}):
            resolved = self.adjudication_for(record_id)
            if resolved is not None:
                out[record_id] = resolved
        return out

    def disagreements(self) -> list[str]:
        return [
            record_id
            for record_id, adj in self.adjudications().items()
            if adj.status == "needs_adjudication"
        ]

    def pair_labels(self) -> dict[tuple[str, str], list[tuple[int, int]]]:
        """First-round label pairs per unordered annotator pair, for agreement reports."""
        pairs: dict[tuple[str, str], list[tuple[int, int]]] = {}
        for record_id in sorted({a.record_id for a in self.assignments.values()}):
            annotators = self.first_round_annotators(record_id)
            if len(annotators) != 2:
                continue
            reviews = [self.reviews.get((record_id, aid)) for aid in annotators]
            if any(r is None for r in reviews):
                continue
            ordered = tuple(sorted(annotators))
            labels = dict(zip(annotators, [r.label for r in reviews]))
            pairs.setdefault(ordered, []).append((labels[ordered[0]], labels[ordered[1]]))
        return pairs
