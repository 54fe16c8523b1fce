"""Domain types for the hybrid labeling workflow."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Optional

from newsbench.errors import InputError

ANNOTATOR_ROLES = ("ml_scientist", "data_scientist", "linguist", "student", "other")

AGREEMENT_GATE = 0.80
GATE_MIN_ITEMS = 30


@dataclass(frozen=True)
class LabelSuggestion:
    record_id: str
    suggested_label: int
    raw_response: str  # preserved verbatim for audit
    model_name: str
    created_at: datetime

    def __post_init__(self):
        if self.suggested_label not in (0, 1):
            raise InputError(f"suggested label must be 0 or 1, got {self.suggested_label!r}")


@dataclass(frozen=True)
class Annotator:
    id: str
    display_name: str
    role: str = "other"

    def __post_init__(self):
        if self.role not in ANNOTATOR_ROLES:
            raise InputError(f"unknown annotator role {self.role!r}")


@dataclass
class Assignment:
    record_id: str
    annotator_id: str
    state: str = "pending"  # pending | submitted
    sequence: int = 0  # creation order, used for oldest-first queues
    round: str = "first"  # first | third


@dataclass(frozen=True)
class Review:
    record_id: str
    annotator_id: str
    label: int
    note: Optional[str] = None
    submitted_at: Optional[datetime] = None

    def __post_init__(self):
        if self.label not in (0, 1):
            raise InputError(f"review label must be 0 or 1, got {self.label!r}")


@dataclass(frozen=True)
class AdjudicatedLabel:
    record_id: str
    final_label: Optional[int]
    status: str  # agreed | needs_adjudication | adjudicated_by_third
    resolver_id: Optional[str] = None

    def __post_init__(self):
        if self.status not in ("agreed", "needs_adjudication", "adjudicated_by_third"):
            raise InputError(f"unknown adjudication status {self.status!r}")
        if self.status == "agreed" and self.final_label is None:
            raise InputError("agreed records must carry a final label")
        if self.status == "needs_adjudication" and self.final_label is not None:
            raise InputError("unresolved records cannot carry a final label")


@dataclass(frozen=True)
class AgreementReport:
    pair: Optional[tuple[str, str]]  # None for the pooled corpus-level report
    n_items: int
    p_o: float
    p_e: float
    kappa: float
    passes_gate: bool

    def to_json_dict(self) -> dict:
        return {
            "pair": list(self.pair) if self.pair else None,
            "n_items": self.n_items,
            "p_o": self.p_o,
            "p_e": self.p_e,
            "kappa": self.kappa,
            "passes_gate": self.passes_gate,
        }
