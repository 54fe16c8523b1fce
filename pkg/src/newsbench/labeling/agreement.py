"""Cohen's kappa inter-annotator agreement and QC sampling."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence, TypeVar

from newsbench.errors import InputError, UndefinedKappaError
from newsbench.labeling.types import AGREEMENT_GATE, AgreementReport

T = TypeVar("T")


def cohen_kappa(
    labels_a: Sequence[int],
    labels_b: Sequence[int],
    pair: Optional[tuple[str, str]] = None,
    gate: float = AGREEMENT_GATE,
) -> AgreementReport:
    """Chance-corrected agreement between two binary label vectors.

    p_o is the observed agreement rate; p_e the chance rate from the raters'
    marginal label frequencies; kappa = (p_o - p_e) / (1 - p_e). When both
    raters are constant with the same value, p_e = 1 and kappa is undefined,
    which raises rather than returning a made-up number.
    """
    if len(labels_a) != len(labels_b):
        raise InputError(f"label vectors differ in length: {len(labels_a)} vs {len(labels_b)}")
    n = len(labels_a)
    if n == 0:
        raise InputError("label vectors must be non-empty")
    for value in list(labels_a) + list(labels_b):
        if value not in (0, 1):
            raise InputError(f"labels must be 0 or 1, got {value!r}")

    agree = sum(1 for a, b in zip(labels_a, labels_b) if a == b)
    p_o = agree / n
    ones_a = sum(labels_a)
    ones_b = sum(labels_b)
    # p_e = 1 exactly when both raters are constant with the same value
    if (ones_a == 0 and ones_b == 0) or (ones_a == n and ones_b == n):
        raise UndefinedKappaError(
            "both raters are constant with the same label; kappa is undefined"
        )
    pa1 = ones_a / n
    pb1 = ones_b / n
    p_e = pa1 * pb1 + (1 - pa1) * (1 - pb1)
    kappa = (p_o - p_e) / (1 - p_e)
    return AgreementReport(
        pair=pair,
        n_items=n,
        p_o=p_o,
        p_e=p_e,
        kappa=kappa,
        passes_gate=kappa >= gate,
    )


def pair_reports(
    pair_labels: dict[tuple[str, str], list[tuple[int, int]]],
    gate: float = AGREEMENT_GATE,
) -> tuple[list[AgreementReport], list[tuple[str, str]]]:
    """Per-pair agreement reports.

    Pairs whose kappa is undefined (never a disagreement, single label) are
    returned separately instead of being scored.
    """
    reports: list[AgreementReport] = []
    undefined: list[tuple[str, str]] = []
    for pair, labels in sorted(pair_labels.items()):
        a = [x for x, _ in labels]
        b = [y for _, y in labels]
        try:
            reports.append(cohen_kappa(a, b, pair=pair, gate=gate))
        except UndefinedKappaError:
            undefined.append(pair)
    return reports, undefined


def pooled_report(
    pair_labels: dict[tuple[str, str], list[tuple[int, int]]],
    gate: float = AGREEMENT_GATE,
) -> Optional[AgreementReport]:
    """Corpus-level kappa over all first-round review pairs pooled together."""
    a: list[int] = []
    b: list[int] = []
    for labels in pair_labels.values():
        a.extend(x for x, _ in labels)
        b.extend(y for _, y in labels)
    if not a:
        return None
    try:
        return cohen_kappa(a, b, pair=None, gate=gate)
    except UndefinedKappaError:
        return None


def qc_sample(labeled: Sequence[T], rate: float, seed: int) -> list[T]:
    """Draw ceil(rate * n) items uniformly without replacement.

    Output keeps corpus order, so rate 1.0 returns the input unchanged.
    """
    if not labeled:
        raise InputError("nothing to sample from")
    if not (0.0 < rate <= 1.0):
        raise InputError(f"rate must be in (0, 1], got {rate}")
    n = len(labeled)
    k = math.ceil(rate * n)
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(n), k))
    return [labeled[i] for i in chosen]
