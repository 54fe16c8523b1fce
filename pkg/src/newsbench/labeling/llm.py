"""LLM label suggestions: HTTP chat-completion client and a file-backed stub.

The endpoint is configured through environment variables so credentials stay
out of code and state files:

    NEWSBENCH_LLM_BASE_URL   e.g. https://api.example.com/v1
    NEWSBENCH_LLM_API_KEY    bearer credential
    NEWSBENCH_LLM_MODEL      model name sent with every request

Responses are parsed strictly: the first line must contain exactly one of the
standalone words FAKE or REAL (any case). Anything else leaves the record
unsuggested rather than defaulting.
"""

from __future__ import annotations

import json
import os
import re
from datetime import datetime, timezone
from pathlib import Path
from typing import Protocol

import requests

from newsbench.errors import ConfigurationError, SuggestionTransportError, UnparseableVerdictError
from newsbench.ingest.records import ConsolidatedRecord
from newsbench.labeling.types import LabelSuggestion

DEFAULT_PROMPT_TEMPLATE = (
    "You are reviewing a news snippet for an election-news corpus.\n"
    "Decide whether the snippet is more likely fabricated or genuine reporting.\n"
    "Answer with exactly one word on the first line: FAKE or REAL.\n"
    "You may add a short justification on the following lines.\n"
    "\n"
    "Snippet:\n"
    "{text}\n"
)

_FAKE_RE = re.compile(r"\bFAKE\b", re.IGNORECASE)
_REAL_RE = re.compile(r"\bREAL\b", re.IGNORECASE)


class CompletionClient(Protocol):
    model_name: str

    def complete(self, record_id: str, prompt: str) -> str: ...


class HttpChatClient:
    """Minimal chat-completion client; temperature pinned to 0 for reproducibility."""

    def __init__(self, base_url: str | None = None, api_key: str | None = None, model_name: str | None = None,
                 timeout: float = 30.0):
        self.base_url = (base_url or os.environ.get("NEWSBENCH_LLM_BASE_URL", "")).rstrip("/")
        self.api_key = api_key or os.environ.get("NEWSBENCH_LLM_API_KEY", "")
        self.model_name = model_name or os.environ.get("NEWSBENCH_LLM_MODEL", "")
        self.timeout = timeout
        if not self.base_url or not self.model_name:
            raise ConfigurationError(
                "LLM endpoint not configured; set NEWSBENCH_LLM_BASE_URL and NEWSBENCH_LLM_MODEL"
            )

    def complete(self, record_id: str, prompt: str) -> str:
        body = {
            "model": self.model_name,
            "temperature": 0,
            "messages": [{"role": "user", "content": prompt}],
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            response = requests.post(
                f"{self.base_url}/chat/completions", json=body, headers=headers, timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise SuggestionTransportError(f"LLM request failed: {exc}") from exc
        if response.status_code >= 400:
            raise SuggestionTransportError(f"LLM endpoint returned HTTP {response.status_code}")
        try:
            payload = response.json()
            return payload["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError) as exc:
            raise SuggestionTransportError(f"malformed LLM response: {exc}") from exc


class StubClient:
    """Offline client with canned responses keyed by record id.

    The stub file is JSON: {"record_id": "response text", ...}.
    """

    def __init__(self, responses: dict[str, str], model_name: str = "stub"):
        self.responses = dict(responses)
        self.model_name = model_name

    @classmethod
    def from_file(cls, path: str | Path, model_name: str = "stub") -> "StubClient":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls({str(k): str(v) for k, v in data.items()}, model_name=model_name)

    def complete(self, record_id: str, prompt: str) -> str:
        if record_id not in self.responses:
            raise SuggestionTransportError(f"stub has no response for record {record_id!r}")
        return self.responses[record_id]


def parse_verdict(response: str) -> int:
    """Map the first response line to a label; raise when ambiguous."""
    first_line = response.strip().splitlines()[0] if response.strip() else ""
    has_fake = bool(_FAKE_RE.search(first_line))
    has_real = bool(_REAL_RE.search(first_line))
    if has_fake == has_real:
        raise UnparseableVerdictError(
            f"first line {first_line!r} must contain exactly one of FAKE or REAL"
        )
    return 1 if has_fake else 0


def suggest_label(
    record: ConsolidatedRecord,
    client: CompletionClient,
    prompt_template: str = DEFAULT_PROMPT_TEMPLATE,
) -> LabelSuggestion:
    """Ask the client for a verdict on one record."""
    if not record.text.strip():
        raise UnparseableVerdictError(f"record {record.id!r} has no text to label")
    prompt = prompt_template.format(text=record.text)
    response = client.complete(record.id, prompt)
    label = parse_verdict(response)
    return LabelSuggestion(
        record_id=record.id,
        suggested_label=label,
        raw_response=response,
        model_name=client.model_name,
        created_at=datetime.now(timezone.utc),
    )
