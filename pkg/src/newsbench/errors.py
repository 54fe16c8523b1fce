"""Exception types shared across the package."""

from __future__ import annotations


class NewsbenchError(Exception):
    """Base class for every error raised by this package."""


class InputError(NewsbenchError):
    """Arguments violate an operation's contract."""


class ConfigurationError(NewsbenchError):
    """A configuration file or parameter set is unusable."""


class FeedTransportError(NewsbenchError):
    """Network-level feed failure; the request may be retried."""

    retriable = True


class FeedUpstreamError(NewsbenchError):
    """The feed server answered with an error status."""

    def __init__(self, status: int, url: str):
        super().__init__(f"feed request failed with HTTP {status}: {url}")
        self.status = status
        self.url = url


class FeedParseError(NewsbenchError):
    """Payload is not a parseable feed."""

    def __init__(self, message: str, byte_offset: int = 0):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class EmptyInputError(NewsbenchError):
    """Text input was empty or whitespace-only."""


class EmptyCorpusError(NewsbenchError):
    """Consolidation or filtering produced no records."""


class SuggestionTransportError(NewsbenchError):
    """LLM endpoint unreachable; the request may be retried."""

    retriable = True


class UnparseableVerdictError(NewsbenchError):
    """LLM response did not contain exactly one verdict token."""


class ReviewConflictError(NewsbenchError):
    """A review was resubmitted with a different label; the stored one stands."""

    def __init__(self, record_id: str, annotator_id: str, stored_label: int, new_label: int):
        super().__init__(
            f"review conflict for record {record_id!r} by {annotator_id!r}: "
            f"stored label {stored_label}, new label {new_label}"
        )
        self.record_id = record_id
        self.annotator_id = annotator_id
        self.stored_label = stored_label
        self.new_label = new_label


class IntegrityError(NewsbenchError):
    """Workflow state violates an invariant (e.g. both reviews by one annotator)."""


class UndefinedKappaError(NewsbenchError):
    """Chance agreement equals 1; Cohen's kappa has no defined value."""


class ExportBlockedError(NewsbenchError):
    """Labeled-corpus export refused; carries the offending ids or pairs."""

    def __init__(self, message: str, record_ids: tuple = (), failing_pairs: tuple = ()):
        super().__init__(message)
        self.record_ids = tuple(record_ids)
        self.failing_pairs = tuple(failing_pairs)


class TrainingError(NewsbenchError):
    """A model cannot be fitted on the given data."""
