"""End-to-end benchmark run: labeled corpus in, leaderboard artifacts out.

Every stage is seeded, so two runs over the same corpus produce byte-identical
report files. Naive Bayes kinds consume raw term counts; everything else
consumes the TF-IDF rows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from newsbench.errors import InputError
from newsbench.evaluation.metrics import ConfusionMatrix, MetricsReport, confusion, metrics
from newsbench.evaluation.report import Leaderboard, leaderboard, render_report
from newsbench.features.split import SplitSpec, split, upsample
from newsbench.features.tokenizer import tokenize
from newsbench.features.vectorize import FeatureMatrix, Vocabulary, build_vocabulary, count_matrix, tfidf
from newsbench.ingest.records import ConsolidatedRecord
from newsbench.models import MODEL_KINDS, TrainedModel, base, feature_space

logger = logging.getLogger(__name__)


@dataclass
class FeatureBundle:
    """Vectorized corpus plus the split that produced it."""

    vocabulary: Vocabulary
    record_ids: list[str]
    labels: list[int]
    train_indices: list[int]
    test_indices: list[int]
    train_rows: list[int]  # after upsampling, indices into the full corpus
    counts: FeatureMatrix
    weights: FeatureMatrix
    dropped_empty: int = 0


def prepare_features(
    records: Sequence[ConsolidatedRecord],
    seed: int,
    min_df: int = 2,
    max_features: Optional[int] = None,
    balance: bool = True,
) -> FeatureBundle:
    """Tokenize, split 80-20 stratified, build the vocabulary on the train
    side only, vectorize, and upsample the training rows to class parity.

    Records with no tokens after scrubbing and filtering are dropped with a
    logged count; they carry no usable signal.
    """
    labeled = [r for r in records if r.label is not None]
    if not labeled:
        raise InputError("no labeled records to benchmark")
    token_lists = [tokenize(r.text) for r in labeled]
    kept = [i for i, tokens in enumerate(token_lists) if tokens]
    dropped = len(labeled) - len(kept)
    if dropped:
        logger.warning("dropping %d record(s) with empty token lists", dropped)
    labeled = [labeled[i] for i in kept]
    token_lists = [token_lists[i] for i in kept]

    labels = [r.label for r in labeled]
    record_ids = [r.id for r in labeled]
    train_indices, test_indices = split(labels, SplitSpec(seed=seed))

    vocabulary = build_vocabulary(
        [token_lists[i] for i in train_indices], min_df=min_df, max_features=max_features
    )
    counts = count_matrix(token_lists, vocabulary, row_ids=record_ids)
    weights = tfidf(token_lists, vocabulary, row_ids=record_ids)

    train_rows = upsample(train_indices, labels, seed=seed) if balance else list(train_indices)
    return FeatureBundle(
        vocabulary=vocabulary,
        record_ids=record_ids,
        labels=labels,
        train_indices=train_indices,
        test_indices=test_indices,
        train_rows=train_rows,
        counts=counts,
        weights=weights,
        dropped_empty=dropped,
    )


def matrix_for(bundle: FeatureBundle, kind: str) -> FeatureMatrix:
    return bundle.counts if feature_space(kind) == "counts" else bundle.weights


def train_kind(bundle: FeatureBundle, kind: str, seed: int, overrides: Optional[dict] = None) -> TrainedModel:
    matrix = matrix_for(bundle, kind)
    X_train = matrix.select_rows(bundle.train_rows)
    y_train = [bundle.labels[i] for i in bundle.train_rows]
    return base.train(
        kind,
        X_train,
        y_train,
        seed=seed,
        overrides=overrides,
        vocab_fingerprint=bundle.vocabulary.fingerprint(),
    )


@dataclass
class BenchmarkResult:
    board: Leaderboard
    confusions: dict[str, ConfusionMatrix]
    models: dict[str, TrainedModel]
    bundle: FeatureBundle
    reports: dict[str, MetricsReport] = field(default_factory=dict)


def run_benchmark(
    records: Sequence[ConsolidatedRecord],
    seed: int,
    kinds: Sequence[str] = MODEL_KINDS,
    out_dir: Optional[str | Path] = None,
    min_df: int = 2,
    overrides_by_kind: Optional[dict[str, dict]] = None,
    external_predictions: Optional[dict[str, dict[str, int]]] = None,
) -> BenchmarkResult:
    """Train every requested hub model and score it on the held-out split.

    external_predictions maps a model name to {record_id: label}; those rows
    are scored on whichever test records they cover and join the leaderboard
    alongside the native models.
    """
    bundle = prepare_features(records, seed=seed, min_df=min_df)
    y_test = [bundle.labels[i] for i in bundle.test_indices]

    reports: list[MetricsReport] = []
    confusions: dict[str, ConfusionMatrix] = {}
    models: dict[str, TrainedModel] = {}
    for kind in kinds:
        overrides = (overrides_by_kind or {}).get(kind)
        model = train_kind(bundle, kind, seed=seed, overrides=overrides)
        matrix = matrix_for(bundle, kind)
        predicted = base.predict(model, matrix.select_rows(bundle.test_indices))
        cm = confusion(y_test, predicted)
        reports.append(metrics(cm, kind))
        confusions[kind] = cm
        models[kind] = model

    for name, by_record in (external_predictions or {}).items():
        truths, predicted = [], []
        for row in bundle.test_indices:
            record_id = bundle.record_ids[row]
            if record_id in by_record:
                truths.append(bundle.labels[row])
                predicted.append(by_record[record_id])
        if not truths:
            logger.warning("external predictions %r cover no test records; skipped", name)
            continue
        cm = confusion(truths, predicted)
        reports.append(metrics(cm, name))
        confusions[name] = cm

    board = leaderboard(reports)
    result = BenchmarkResult(
        board=board,
        confusions=confusions,
        models=models,
        bundle=bundle,
        reports={r.model_name: r for r in reports},
    )
    if out_dir is not None:
        write_reports(result, out_dir)
    return result


def write_reports(result: BenchmarkResult, out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for fmt, name in (("json", "leaderboard.json"), ("markdown", "report.md"), ("csv", "report.csv")):
        path = out / name
        path.write_text(render_report(result.board, result.confusions, format=fmt), encoding="utf-8")
        paths[fmt] = path
    return paths
