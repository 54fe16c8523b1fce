"""newsbench: build a labeled election-news corpus and benchmark classical text classifiers on it.

Subpackages:
    ingest      feed fetching, snippet extraction, PII scrubbing, consolidation
    labeling    LLM label suggestions, dual human review, agreement gating
    features    tokenization, TF-IDF vectorization, splitting, upsampling
    models      the classifier hub (native implementations) and external-prediction import
    evaluation  confusion matrices, metrics, leaderboard, report rendering
    service     HTTP API and job runner binding the pipeline together
"""

__version__ = "0.1.0"
