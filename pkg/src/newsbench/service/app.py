"""HTTP service: corpus browsing, review queues, agreement, jobs, reports.

All JSON endpoints live under /api/v1 (with /api/health kept as a bare
liveness alias). Annotator sessions authenticate with the X-Annotator-Token
header mapped through the annotators file. LLM raw responses are never
exposed through the API; suggestion labels are shown only while the
suggestion-visibility toggle is on.
"""

from __future__ import annotations

import configparser
import json
import os
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from newsbench import ops
from newsbench.errors import (
    ExportBlockedError,
    InputError,
    IntegrityError,
    NewsbenchError,
    ReviewConflictError,
)
from newsbench.ingest.records import ConsolidatedRecord, read_corpus
from newsbench.labeling.workflow import WorkflowStore
from newsbench.models import MODEL_KINDS
from newsbench.service.jobs import JOB_KINDS, JobManager


@dataclass
class ServiceConfig:
    store_dir: Path
    ui_dir: Optional[Path] = None
    suggestions_visible: bool = False
    corpus_name: str = "corpus.jsonl"
    annotators_name: str = "annotators.jsonl"

    @classmethod
    def load(cls, store_dir: str | Path, config_file: Optional[str | Path] = None) -> "ServiceConfig":
        """Configuration file plus environment overrides.

        [service] section keys: ui_dir, suggestions_visible, corpus, annotators.
        Environment: NEWSBENCH_STORE, NEWSBENCH_UI_DIR, NEWSBENCH_SUGGESTIONS_VISIBLE.
        """
        store = Path(os.environ.get("NEWSBENCH_STORE", store_dir))
        config = cls(store_dir=store)
        candidate = Path(config_file) if config_file else store / "service.ini"
        if candidate.exists():
            parser = configparser.ConfigParser()
            parser.read(candidate)
            if parser.has_section("service"):
                section = parser["service"]
                if section.get("ui_dir"):
                    config.ui_dir = Path(section["ui_dir"])
                config.suggestions_visible = section.getboolean(
                    "suggestions_visible", fallback=config.suggestions_visible
                )
                config.corpus_name = section.get("corpus", config.corpus_name)
                config.annotators_name = section.get("annotators", config.annotators_name)
        if os.environ.get("NEWSBENCH_UI_DIR"):
            config.ui_dir = Path(os.environ["NEWSBENCH_UI_DIR"])
        if os.environ.get("NEWSBENCH_SUGGESTIONS_VISIBLE"):
            config.suggestions_visible = os.environ["NEWSBENCH_SUGGESTIONS_VISIBLE"].lower() in (
                "1",
                "true",
                "yes",
            )
        return config


@dataclass
class AppState:
    config: ServiceConfig
    corpus: list[ConsolidatedRecord] = field(default_factory=list)
    store: WorkflowStore = None
    tokens: dict[str, str] = field(default_factory=dict)
    jobs: JobManager = field(default_factory=JobManager)

    @classmethod
    def initialize(cls, config: ServiceConfig) -> "AppState":
        store_dir = config.store_dir
        if not store_dir.exists():
            raise InputError(f"store directory {store_dir} does not exist")
        corpus_path = store_dir / config.corpus_name
        corpus = read_corpus(corpus_path) if corpus_path.exists() else []
        store = WorkflowStore(store_dir / "workflow.jsonl")
        tokens: dict[str, str] = {}
        annotators_path = store_dir / config.annotators_name
        if annotators_path.exists():
            annotators, tokens = ops.read_annotators(annotators_path)
            for annotator in annotators:
                if annotator.id not in store.annotators:
                    store.add_annotator(annotator)
        return cls(config=config, corpus=corpus, store=store, tokens=tokens)

    @property
    def artifacts_dir(self) -> Path:
        path = self.config.store_dir / "artifacts"
        path.mkdir(exist_ok=True)
        return path

    def record_by_id(self, record_id: str) -> Optional[ConsolidatedRecord]:
        for record in self.corpus:
            if record.id == record_id:
                return record
        return None


class ReviewBody(BaseModel):
    record_id: str
    label: int
    note: Optional[str] = None
    supersede: bool = False


class JobBody(BaseModel):
    kind: str
    params: dict = {}
    idempotency_key: Optional[str] = None


def create_app(config: ServiceConfig) -> FastAPI:
    state = AppState.initialize(config)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        state.jobs.shutdown()  # lets in-flight submissions finish

    app = FastAPI(title="newsbench", version="1", lifespan=lifespan)
    app.state.bench = state

    def current_annotator(x_annotator_token: Optional[str] = Header(default=None)) -> str:
        if not x_annotator_token or x_annotator_token not in state.tokens:
            raise HTTPException(status_code=401, detail="missing or unknown annotator token")
        return state.tokens[x_annotator_token]

    @app.get("/api/health")
    @app.get("/api/v1/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/v1/records")
    def list_records(labeled: Optional[bool] = None, limit: int = 50, offset: int = 0):
        if limit < 1 or offset < 0:
            raise HTTPException(status_code=422, detail="limit must be >= 1 and offset >= 0")
        records = state.corpus
        if labeled is not None:
            records = [r for r in records if (r.label is not None) == labeled]
        page = records[offset : offset + limit]
        return {"total": len(records), "records": [r.to_json_dict() for r in page]}

    def _queue_items(annotator_id: str) -> list[dict]:
        items = []
        for assignment in state.store.pending_assignments(annotator_id):
            record = state.record_by_id(assignment.record_id)
            if record is None:
                continue
            item = {
                "record_id": record.id,
                "text": record.text,
                "dataset": record.dataset,
                "published_at": record.to_json_dict().get("published_at"),
                "keyword_group": record.keyword_group,
            }
            if state.config.suggestions_visible:
                suggestion = state.store.suggestions.get(record.id)
                if suggestion is not None:
                    item["suggestion"] = {"label": suggestion.suggested_label, "visible": True}
            items.append(item)
        return items

    @app.get("/api/v1/queue/{annotator_id}")
    def queue(annotator_id: str, caller: str = Depends(current_annotator)):
        if caller != annotator_id:
            raise HTTPException(status_code=403, detail="queues are private to their annotator")
        return {"annotator_id": annotator_id, "items": _queue_items(annotator_id)}

    @app.post("/api/v1/reviews")
    def post_review(body: ReviewBody, caller: str = Depends(current_annotator)):
        if body.label not in (0, 1):
            raise HTTPException(status_code=422, detail="label must be 0 or 1")
        record = state.record_by_id(body.record_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown record {body.record_id!r}")
        try:
            if body.supersede:
                review = state.store.supersede_review(body.record_id, caller, body.label)
            elif (body.record_id, caller) in state.store.assignments:
                review = state.store.record_review(body.record_id, caller, body.label, note=body.note)
            else:
                review = state.store.add_third_review(body.record_id, caller, body.label, note=body.note)
        except ReviewConflictError as exc:
            raise HTTPException(
                status_code=409,
                detail={
                    "message": str(exc),
                    "stored_label": exc.stored_label,
                    "attempted_label": exc.new_label,
                },
            )
        except IntegrityError as exc:
            raise HTTPException(status_code=403, detail=str(exc))
        except InputError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        adjudication = state.store.adjudication_for(body.record_id)
        return {
            "record_id": review.record_id,
            "annotator_id": review.annotator_id,
            "label": review.label,
            "status": adjudication.status if adjudication else "pending_second_review",
        }

    @app.get("/api/v1/agreement")
    def agreement():
        return ops.agreement_payload(state.store)

    @app.get("/api/v1/adjudications")
    def adjudications(caller: str = Depends(current_annotator)):
        """Open disagreement cases the caller is eligible to resolve."""
        cases = []
        for record_id in state.store.disagreements():
            first_pair = state.store.first_round_annotators(record_id)
            if caller in first_pair:
                continue
            record = state.record_by_id(record_id)
            if record is None:
                continue
            labels = sorted(r.label for r in state.store.reviews_for(record_id))
            cases.append({"record_id": record_id, "text": record.text, "labels": labels})
        return {"cases": cases}

    @app.get("/api/v1/suggestions/{record_id}")
    def suggestion(record_id: str, caller: str = Depends(current_annotator)):
        if not state.config.suggestions_visible:
            raise HTTPException(status_code=403, detail="suggestion visibility is disabled for this study")
        stored = state.store.suggestions.get(record_id)
        if stored is None:
            raise HTTPException(status_code=404, detail=f"no suggestion for record {record_id!r}")
        # raw_response stays out of annotator-facing payloads
        return {
            "record_id": stored.record_id,
            "suggested_label": stored.suggested_label,
            "model_name": stored.model_name,
        }

    def _job_runner(kind: str, params: dict):
        artifacts = state.artifacts_dir

        def run(p: dict) -> str:
            if kind == "ingest":
                out = p.get("out") or str(artifacts / "corpus.jsonl")
                return str(
                    ops.op_ingest(
                        feeds_path=p["feeds"],
                        window_start=p["window_start"],
                        window_end=p["window_end"],
                        out_path=out,
                        benchmark_path=p.get("benchmark"),
                        limit=int(p.get("limit", 5000)),
                    )
                )
            if kind == "suggest":
                out = p.get("out") or str(artifacts / "suggestions.jsonl")
                return str(
                    ops.op_suggest(
                        corpus_path=p["corpus"], out_path=out, stub_path=p.get("stub"), store=state.store
                    )
                )
            if kind == "train":
                out = p.get("out") or str(artifacts / f"model-{p['model']}.json")
                return str(
                    ops.op_train(
                        corpus_path=p["corpus"],
                        kind=p["model"],
                        seed=int(p.get("seed", 0)),
                        out_path=out,
                    )
                )
            out = p.get("out") or str(artifacts / "report.json")
            return str(
                ops.op_evaluate(
                    truth_path=p["truth"],
                    predictions_paths=list(p["preds"]),
                    out_path=out,
                    format=p.get("format", "json"),
                )
            )

        return run

    _REQUIRED_PARAMS = {
        "ingest": ("feeds", "window_start", "window_end"),
        "suggest": ("corpus",),
        "train": ("model", "corpus"),
        "evaluate": ("truth", "preds"),
    }

    @app.post("/api/v1/jobs")
    def submit_job(body: JobBody):
        if body.kind not in JOB_KINDS:
            raise HTTPException(status_code=422, detail=f"unknown job kind {body.kind!r}")
        missing = [key for key in _REQUIRED_PARAMS[body.kind] if key not in body.params]
        if missing:
            raise HTTPException(status_code=422, detail=f"missing params for {body.kind}: {missing}")
        if body.kind == "train" and body.params["model"] not in MODEL_KINDS:
            raise HTTPException(status_code=422, detail=f"unknown model kind {body.params['model']!r}")
        job = state.jobs.submit(
            body.kind,
            body.params,
            _job_runner(body.kind, body.params),
            idempotency_key=body.idempotency_key,
        )
        return job.to_json_dict()

    @app.get("/api/v1/jobs/{job_id}")
    def poll_job(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return job.to_json_dict()

    @app.get("/api/v1/reports/latest")
    def latest_report():
        candidates = sorted(
            state.artifacts_dir.glob("report*.*"), key=lambda p: p.stat().st_mtime, reverse=True
        )
        if not candidates:
            raise HTTPException(status_code=404, detail="no reports yet")
        path = candidates[0]
        content = path.read_text(encoding="utf-8")
        if path.suffix == ".json":
            return {"path": str(path), "report": json.loads(content)}
        return {"path": str(path), "content": content}

    @app.exception_handler(ExportBlockedError)
    def _export_blocked(request, exc):  # pragma: no cover - defensive mapping
        raise HTTPException(status_code=409, detail=str(exc))

    if config.ui_dir and Path(config.ui_dir).exists():
        app.mount("/", StaticFiles(directory=str(config.ui_dir), html=True), name="ui")

    return app


def serve(config: ServiceConfig, host: str = "127.0.0.1", port: int = 8400) -> None:
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=host, port=port)


__all__ = ["AppState", "ServiceConfig", "create_app", "serve", "NewsbenchError"]
