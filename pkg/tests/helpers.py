"""Shared test data generators and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from newsbench.ingest.records import ConsolidatedRecord

FAKE_MARKERS = [
    "hoax", "fabricated", "doctored", "unsourced", "debunked",
    "conspiracy", "shadowy", "miracle", "secret", "viral",
]
NEUTRAL_WORDS = [
    "county", "officials", "turnout", "ballots", "audits", "precinct", "statement",
    "reporters", "campaign", "tuesday", "committee", "statewide", "routine",
    "counted", "published", "schedule", "update", "meeting", "record", "result",
]


def planted_corpus(n=120, seed=11, markers_per_fake=4):
    """Synthetic labeled corpus with a clean lexical signal for the fake class."""
    rng = random.Random(seed)
    records = []
    for i in range(n):
        label = i % 2
        words = rng.choices(NEUTRAL_WORDS, k=12)
        if label == 1:
            words += rng.choices(FAKE_MARKERS, k=markers_per_fake)
        rng.shuffle(words)
        records.append(
            ConsolidatedRecord(
                id=f"syn-{i:04d}", dataset="synthetic", text=" ".join(words), label=label
            )
        )
    return records


def nb_posterior_oracle(count_rows, labels, test_rows, alpha=Fraction(1), fit_prior=True):
    """Multinomial NB by direct posterior enumeration in exact rationals."""
    vocab = len(count_rows[0])
    n = len(labels)
    class_rows = {c: [r for r, l in zip(count_rows, labels) if l == c] for c in (0, 1)}
    predictions = []
    for test in test_rows:
        scores = {}
        for c in (0, 1):
            docs = class_rows[c]
            prior = Fraction(len(docs), n) if fit_prior else Fraction(1, 2)
            total = sum(sum(d) for d in docs)
            score = prior
            for t in range(vocab):
                count_t = sum(d[t] for d in docs)
                theta = Fraction(count_t + alpha, total + alpha * vocab)
                score *= theta ** test[t]
            scores[c] = score
        predictions.append(1 if scores[1] > scores[0] else 0)
    return predictions
