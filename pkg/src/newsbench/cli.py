"""Command-line interface mirroring every pipeline stage.

    newsbench ingest --feeds feeds.ini --window-start 2023-04-20T00:00:00Z \
        --window-end 2023-10-20T00:00:00Z --benchmark bench.jsonl --limit 5000 --out corpus.jsonl
    newsbench label suggest --corpus corpus.jsonl --stub stub.json --out suggestions.jsonl
    newsbench label assign --corpus corpus.jsonl --annotators annotators.jsonl --seed 7 --store store/
    newsbench label kappa --store store/
    newsbench label export --corpus corpus.jsonl --store store/ --out labeled.jsonl --strict
    newsbench train --model multinomial_nb --corpus labeled.jsonl --seed 7 --out model.json
    newsbench predict --model model.json --corpus test.jsonl --out preds.jsonl
    newsbench evaluate --truth test.jsonl --preds preds.jsonl --format markdown --out report.md
    newsbench serve --port 8400 --store store/
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from newsbench import ops
from newsbench.errors import NewsbenchError
from newsbench.labeling.workflow import WorkflowStore
from newsbench.models import MODEL_KINDS


def _store(store_dir: str) -> WorkflowStore:
    path = Path(store_dir)
    path.mkdir(parents=True, exist_ok=True)
    return WorkflowStore(path / "workflow.jsonl")


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)


@main.command()
@click.option("--feeds", "feeds_path", required=True, type=click.Path(exists=True))
@click.option("--window-start", required=True, help="RFC 3339 timestamp")
@click.option("--window-end", required=True, help="RFC 3339 timestamp")
@click.option("--benchmark", "benchmark_path", type=click.Path(exists=True))
@click.option("--limit", default=5000, show_default=True)
@click.option("--max-sentences", default=5, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--csv", "csv_path", type=click.Path(), help="Also write a Dataset,Text,Label CSV.")
@click.option("--timeout", default=10.0, show_default=True)
def ingest(feeds_path, window_start, window_end, benchmark_path, limit, max_sentences, out_path, csv_path, timeout):
    """Fetch feeds, scrub, and consolidate into a corpus file."""
    path = ops.op_ingest(
        feeds_path=feeds_path,
        window_start=window_start,
        window_end=window_end,
        out_path=out_path,
        benchmark_path=benchmark_path,
        limit=limit,
        max_sentences=max_sentences,
        csv_path=csv_path,
        timeout=timeout,
    )
    click.echo(f"wrote corpus to {path}")


@main.group()
def label():
    """Labeling workflow commands."""


@label.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--stub", "stub_path", type=click.Path(exists=True), help="Offline stub responses JSON.")
@click.option("--store", "store_dir", type=click.Path(), help="Also journal suggestions into this store.")
@click.option("--prompt", "prompt_path", type=click.Path(exists=True),
              help="Prompt template file with a {text} placeholder; defaults to the built-in template.")
def suggest(corpus_path, out_path, stub_path, store_dir, prompt_path):
    """Collect LLM label suggestions for every record."""
    from newsbench.labeling.llm import DEFAULT_PROMPT_TEMPLATE

    template = Path(prompt_path).read_text(encoding="utf-8") if prompt_path else DEFAULT_PROMPT_TEMPLATE
    store = _store(store_dir) if store_dir else None
    path = ops.op_suggest(corpus_path, out_path, stub_path=stub_path, store=store, prompt_template=template)
    click.echo(f"wrote suggestions to {path}")


@label.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--annotators", "annotators_path", required=True, type=click.Path(exists=True))
@click.option("--seed", default=7, show_default=True)
@click.option("--store", "store_dir", required=True, type=click.Path())
def assign(corpus_path, annotators_path, seed, store_dir):
    """Assign every record to two reviewers."""
    annotators, _ = ops.read_annotators(annotators_path)
    count = ops.op_assign(corpus_path, annotators, seed, _store(store_dir))
    click.echo(f"created {count} assignments for {len(annotators)} annotators")


@label.command()
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
def kappa(store_dir):
    """Print per-pair and pooled agreement as JSON."""
    payload = ops.agreement_payload(_store(store_dir))
    click.echo(json.dumps(payload, indent=2))


@label.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--strict/--no-strict", default=True, show_default=True)
def export(corpus_path, store_dir, out_path, strict):
    """Export the adjudicated corpus, enforcing the agreement gate."""
    path = ops.op_export(corpus_path, _store(store_dir), out_path, strict=strict)
    click.echo(f"exported labeled corpus to {path}")


@main.command()
@click.option("--model", "kind", required=True, type=click.Choice(MODEL_KINDS))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--seed", default=7, show_default=True)
@click.option("--min-df", default=2, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def train(kind, corpus_path, seed, min_df, out_path):
    """Train one hub model on a labeled corpus."""
    path = ops.op_train(corpus_path, kind, seed, out_path, min_df=min_df)
    click.echo(f"wrote model container to {path}")


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
def predict(model_path, corpus_path, out_path):
    """Predict labels for a corpus with a trained model container."""
    path = ops.op_predict(model_path, corpus_path, out_path)
    click.echo(f"wrote predictions to {path}")


@main.command()
@click.option("--truth", "truth_path", required=True, type=click.Path(exists=True))
@click.option("--preds", "predictions_paths", required=True, multiple=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv", "json"]))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--include-tn/--paper-shape", default=True, show_default=True,
              help="--paper-shape drops the TN%% column from the confusion table.")
def evaluate(truth_path, predictions_paths, fmt, out_path, include_tn):
    """Score prediction files against a labeled corpus and render the report."""
    path = ops.op_evaluate(truth_path, predictions_paths, out_path, format=fmt, include_tn=include_tn)
    click.echo(f"wrote report to {path}")


@main.command()
@click.option("--port", default=8400, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
@click.option("--config", "config_file", type=click.Path(exists=True))
def serve(port, host, store_dir, config_file):
    """Run the HTTP service and annotation UI."""
    from newsbench.service.app import ServiceConfig
    from newsbench.service.app import serve as run_server

    run_server(ServiceConfig.load(store_dir, config_file), host=host, port=port)


def entrypoint():  # pragma: no cover - thin wrapper
    try:
        main(standalone_mode=True)
    except NewsbenchError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entrypoint()
