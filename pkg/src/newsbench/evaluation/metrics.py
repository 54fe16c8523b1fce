"""Confusion matrices and the four headline metrics.

Accuracy = (TP + TN) / (TP + TN + FP + FN)
Precision = TP / (TP + FP)
Recall = TP / (TP + FN)
F1 = 2 * Precision * Recall / (Precision + Recall)

A zero denominator never divides silently: the metric is reported as 0 and
the matching degenerate flag is raised on the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from newsbench.errors import InputError

DEGENERATE_FLAGS = ("precision_undefined", "recall_undefined", "f1_undefined")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise InputError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def to_json_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


def confusion(y_true: Sequence[int], y_pred: Sequence[int]) -> ConfusionMatrix:
    if len(y_true) != len(y_pred):
        raise InputError(f"length mismatch: {len(y_true)} truths vs {len(y_pred)} predictions")
    if len(y_true) == 0:
        raise InputError("cannot build a confusion matrix from zero samples")
    tp = fp = tn = fn = 0
    for truth, predicted in zip(y_true, y_pred):
        if truth not in (0, 1) or predicted not in (0, 1):
            raise InputError(f"labels must be 0 or 1, got ({truth!r}, {predicted!r})")
        if truth == 1 and predicted == 1:
            tp += 1
        elif truth == 0 and predicted == 1:
            fp += 1
        elif truth == 0 and predicted == 0:
            tn += 1
        else:
            fn += 1
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)


@dataclass(frozen=True)
class MetricsReport:
    model_name: str
    accuracy: float
    precision: float
    recall: float
    f1: float
    degenerate_flags: frozenset[str] = field(default_factory=frozenset)

    def to_json_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "degenerate_flags": sorted(self.degenerate_flags),
        }


def metrics(cm: ConfusionMatrix, model_name: str) -> MetricsReport:
    if cm.total == 0:
        raise InputError("empty confusion matrix")
    flags = set()
    accuracy = (cm.tp + cm.tn) / cm.total

    if cm.tp + cm.fp == 0:
        precision = 0.0
        flags.add("precision_undefined")
    else:
        precision = cm.tp / (cm.tp + cm.fp)

    if cm.tp + cm.fn == 0:
        recall = 0.0
        flags.add("recall_undefined")
    else:
        recall = cm.tp / (cm.tp + cm.fn)

    if precision + recall == 0.0:
        f1 = 0.0
        flags.add("f1_undefined")
    else:
        f1 = 2.0 * precision * recall / (precision + recall)

    return MetricsReport(
        model_name=model_name,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        degenerate_flags=frozenset(flags),
    )
