"""File-level operations shared by the CLI and the job runner.

Each operation takes plain parameters, reads and writes artifact files, and
returns the primary output path, so both entry points stay thin.
"""

from __future__ import annotations

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

from newsbench.errors import InputError
from newsbench.evaluation.metrics import confusion, metrics
from newsbench.evaluation.report import leaderboard, render_report
from newsbench.ingest.config import load_feed_config
from newsbench.ingest.records import (
    ConsolidatedRecord,
    IngestConfig,
    export_csv,
    parse_rfc3339,
    read_corpus,
    write_corpus,
)
from newsbench.ingest.runner import run_ingest
from newsbench.labeling.agreement import pair_reports, pooled_report
from newsbench.labeling.export import export_labeled_corpus
from newsbench.labeling.llm import DEFAULT_PROMPT_TEMPLATE, HttpChatClient, StubClient, suggest_label
from newsbench.labeling.types import Annotator
from newsbench.labeling.workflow import WorkflowStore, assign_reviews
from newsbench.models import base as model_base
from newsbench.models.external import import_external_predictions, write_external_predictions
from newsbench.pipeline import matrix_for, prepare_features, train_kind

logger = logging.getLogger(__name__)


def read_annotators(path: str | Path) -> tuple[list[Annotator], dict[str, str]]:
    """Annotators JSONL: {id, display_name, role, token?}. Returns (annotators, token->id)."""
    annotators: list[Annotator] = []
    tokens: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            annotators.append(
                Annotator(
                    id=str(data["id"]),
                    display_name=str(data.get("display_name", data["id"])),
                    role=str(data.get("role", "other")),
                )
            )
            if data.get("token"):
                tokens[str(data["token"])] = str(data["id"])
    if not annotators:
        raise InputError(f"no annotators found in {path}")
    return annotators, tokens


def op_ingest(
    feeds_path: str | Path,
    window_start: str | datetime,
    window_end: str | datetime,
    out_path: str | Path,
    benchmark_path: Optional[str | Path] = None,
    limit: int = 5000,
    max_sentences: int = 5,
    csv_path: Optional[str | Path] = None,
    timeout: float = 10.0,
) -> Path:
    groups, feeds = load_feed_config(feeds_path)
    config = IngestConfig(
        window_start=parse_rfc3339(window_start) if isinstance(window_start, str) else window_start,
        window_end=parse_rfc3339(window_end) if isinstance(window_end, str) else window_end,
        max_sentences=max_sentences,
        benchmark_limit=limit,
        feeds=feeds,
    )
    benchmark = read_corpus(benchmark_path) if benchmark_path else []
    corpus = run_ingest(config, groups, benchmark, timeout=timeout)
    write_corpus(corpus, out_path)
    if csv_path:
        export_csv(corpus, csv_path)
    logger.info("ingested %d records to %s", len(corpus), out_path)
    return Path(out_path)


def op_suggest(
    corpus_path: str | Path,
    out_path: str | Path,
    stub_path: Optional[str | Path] = None,
    store: Optional[WorkflowStore] = None,
    prompt_template: str = DEFAULT_PROMPT_TEMPLATE,
    model_name: Optional[str] = None,
) -> Path:
    """Suggest labels for every corpus record, writing suggestions JSONL."""
    corpus = read_corpus(corpus_path)
    if stub_path:
        client = StubClient.from_file(stub_path, model_name=model_name or "stub")
    else:
        client = HttpChatClient(model_name=model_name)
    with open(out_path, "w", encoding="utf-8") as handle:
        for record in corpus:
            suggestion = suggest_label(record, client, prompt_template)
            if store is not None:
                store.add_suggestion(suggestion)
            handle.write(
                json.dumps(
                    {
                        "record_id": suggestion.record_id,
                        "suggested_label": suggestion.suggested_label,
                        "model_name": suggestion.model_name,
                        "raw_response": suggestion.raw_response,
                        "created_at": suggestion.created_at.isoformat(),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    return Path(out_path)


def op_assign(
    corpus_path: str | Path,
    annotators: Sequence[Annotator],
    seed: int,
    store: WorkflowStore,
) -> int:
    corpus = read_corpus(corpus_path)
    for annotator in annotators:
        if annotator.id not in store.annotators:
            store.add_annotator(annotator)
    assignments = assign_reviews([r.id for r in corpus], annotators, seed=seed)
    store.add_assignments(assignments)
    return len(assignments)


def agreement_payload(store: WorkflowStore) -> dict:
    pair_labels = store.pair_labels()
    reports, undefined = pair_reports(pair_labels)
    pooled = pooled_report(pair_labels)
    return {
        "pairs": [r.to_json_dict() for r in reports],
        "undefined_pairs": [list(pair) for pair in undefined],
        "pooled": pooled.to_json_dict() if pooled else None,
        "unresolved": len(store.disagreements()),
    }


def op_export(
    corpus_path: str | Path,
    store: WorkflowStore,
    out_path: str | Path,
    strict: bool = True,
) -> Path:
    corpus = read_corpus(corpus_path)
    reports, _ = pair_reports(store.pair_labels())
    export_labeled_corpus(corpus, store.adjudications(), reports, out_path, strict=strict)
    return Path(out_path)


def op_train(
    corpus_path: str | Path,
    kind: str,
    seed: int,
    out_path: str | Path,
    min_df: int = 2,
    overrides: Optional[dict] = None,
) -> Path:
    records = read_corpus(corpus_path)
    bundle = prepare_features(records, seed=seed, min_df=min_df)
    model = train_kind(bundle, kind, seed=seed, overrides=overrides)
    model_base.save_model(model, out_path, vocabulary=bundle.vocabulary)
    return Path(out_path)


def op_predict(
    model_path: str | Path,
    corpus_path: str | Path,
    out_path: str | Path,
) -> Path:
    from newsbench.features.tokenizer import tokenize
    from newsbench.features.vectorize import count_matrix, tfidf
    from newsbench.models import feature_space

    model, vocabulary = model_base.load_model(model_path)
    if vocabulary is None:
        raise InputError(f"{model_path} has no embedded vocabulary; cannot vectorize text")
    records = read_corpus(corpus_path)
    token_lists = [tokenize(r.text) for r in records]
    if feature_space(model.kind) == "counts":
        matrix = count_matrix(token_lists, vocabulary)
    else:
        matrix = tfidf(token_lists, vocabulary)
    labels = model_base.predict(model, matrix)
    write_external_predictions(model.kind, zip((r.id for r in records), labels), out_path)
    return Path(out_path)


def op_evaluate(
    truth_path: str | Path,
    predictions_paths: Sequence[str | Path],
    out_path: str | Path,
    format: str = "markdown",
    include_tn: bool = True,
    strict_ids: bool = False,
) -> Path:
    truth_records = read_corpus(truth_path)
    truth_by_id = {r.id: r.label for r in truth_records if r.label is not None}
    if not truth_by_id:
        raise InputError(f"{truth_path} contains no labeled records")

    reports = []
    confusions = {}
    for path in predictions_paths:
        model_name, predictions = import_external_predictions(
            path, known_record_ids=list(truth_by_id), strict=strict_ids
        )
        if not predictions:
            raise InputError(f"{path}: no predictions match the truth corpus")
        truths = [truth_by_id[rid] for rid, _ in predictions]
        predicted = [label for _, label in predictions]
        cm = confusion(truths, predicted)
        reports.append(metrics(cm, model_name))
        confusions[model_name] = cm

    board = leaderboard(reports)
    Path(out_path).write_text(
        render_report(board, confusions, format=format, include_tn=include_tn), encoding="utf-8"
    )
    return Path(out_path)
