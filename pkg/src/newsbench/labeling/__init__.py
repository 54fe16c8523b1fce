from newsbench.labeling.types import (
    AdjudicatedLabel,
    AgreementReport,
    Annotator,
    Assignment,
    LabelSuggestion,
    Review,
)
from newsbench.labeling.llm import HttpChatClient, StubClient, suggest_label
from newsbench.labeling.workflow import WorkflowStore, adjudicate, assign_reviews
from newsbench.labeling.agreement import cohen_kappa, qc_sample
from newsbench.labeling.export import export_labeled_corpus

__all__ = [
    "AdjudicatedLabel",
    "AgreementReport",
    "Annotator",
    "Assignment",
    "LabelSuggestion",
    "Review",
    "HttpChatClient",
    "StubClient",
    "suggest_label",
    "WorkflowStore",
    "adjudicate",
    "assign_reviews",
    "cohen_kappa",
    "qc_sample",
    "export_labeled_corpus",
]
