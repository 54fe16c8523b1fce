"""Asynchronous job execution on a bounded worker pool.

Jobs are idempotent under a client-supplied key, and at most one train job
runs per model kind at a time (a per-kind lock serializes them). State
transitions are queued -> running -> done|failed, nothing else.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from newsbench.errors import InputError

JOB_KINDS = ("ingest", "suggest", "train", "evaluate")


@dataclass
class JobRecord:
    job_id: str
    kind: str
    state: str = "queued"  # queued | running | done | failed
    params: dict = field(default_factory=dict)
    result_path: Optional[str] = None
    error: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind,
            "state": self.state,
            "params": self.params,
            "result_path": self.result_path,
            "error": self.error,
        }


class JobManager:
    """Runs job callables on a small thread pool with snapshot-consistent reads."""

    def __init__(self, max_workers: int = 2):
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._lock = threading.Lock()
        self._jobs: dict[str, JobRecord] = {}
        self._by_idempotency_key: dict[str, str] = {}
        self._train_locks: dict[str, threading.Lock] = {}

    def submit(
        self,
        kind: str,
        params: dict,
        runner: Callable[[dict], str],
        idempotency_key: Optional[str] = None,
    ) -> JobRecord:
        if kind not in JOB_KINDS:
            raise InputError(f"unknown job kind {kind!r}")
        with self._lock:
            if idempotency_key and idempotency_key in self._by_idempotency_key:
                return self._jobs[self._by_idempotency_key[idempotency_key]]
            job = JobRecord(job_id=uuid.uuid4().hex[:12], kind=kind, params=dict(params))
            self._jobs[job.job_id] = job
            if idempotency_key:
                self._by_idempotency_key[idempotency_key] = job.job_id

        def _run():
            serialize = None
            if kind == "train":
                model_kind = str(params.get("model", ""))
                with self._lock:
                    serialize = self._train_locks.setdefault(model_kind, threading.Lock())
            try:
                if serialize is not None:
                    serialize.acquire()
                with self._lock:
                    job.state = "running"
                result_path = runner(params)
                with self._lock:
                    job.state = "done"
                    job.result_path = result_path
            except Exception as exc:  # job failures surface via the record
                with self._lock:
                    job.state = "failed"
                    job.error = str(exc)
            finally:
                if serialize is not None:
                    serialize.release()

        self._executor.submit(_run)
        return job

    def get(self, job_id: str) -> Optional[JobRecord]:
        with self._lock:
            return self._jobs.get(job_id)

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True)
