"""Uniform train/predict contract for the classifier hub.

Every model is fitted through train() and queried through predict(); the
learned parameters live in a JSON-serializable state dict so models round-trip
through a versioned container file. Default hyperparameters follow the
benchmark configuration; KNN has no published defaults, so its values are
invented and flagged as such in reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np

from newsbench.errors import InputError, TrainingError
from newsbench.features.vectorize import FeatureMatrix, Vocabulary

MODEL_KINDS = (
    "multinomial_nb",
    "bernoulli_nb",
    "logistic_regression",
    "sgd_hinge",
    "linear_svc",
    "decision_tree",
    "random_forest",
    "adaboost",
    "gradient_boosting",
    "knn",
)

DEFAULT_HYPERPARAMETERS: dict[str, dict] = {
    "multinomial_nb": {"alpha": 1.0, "fit_prior": True},
    "bernoulli_nb": {"alpha": 1.0, "fit_prior": True},
    "logistic_regression": {"c": 1.0, "penalty": "l2", "max_iter": 1000, "grad_tol": 1e-6},
    "sgd_hinge": {"loss": "hinge", "penalty": "l2", "learning_rate": 0.01, "epochs": 50, "c": 1.0},
    "linear_svc": {"loss": "squared_hinge", "penalty": "l2", "c": 1.0, "learning_rate": 0.01, "epochs": 50},
    "decision_tree": {"criterion": "gini", "min_samples_split": 2, "max_depth": None},
    "random_forest": {"n_trees": 100, "max_depth": None, "max_features": "sqrt", "bootstrap": True},
    "adaboost": {"n_estimators": 50, "learning_rate": 1.0},
    "gradient_boosting": {"learning_rate": 0.1, "n_estimators": 100, "max_depth": 3},
    "knn": {"k": 5, "metric": "euclidean"},  # invented defaults, not benchmark-published
}

# Which feature representation each kind consumes.
COUNT_BASED_KINDS = ("multinomial_nb", "bernoulli_nb")


def feature_space(kind: str) -> str:
    return "counts" if kind in COUNT_BASED_KINDS else "tfidf"


@dataclass(frozen=True)
class Hyperparameters:
    model_kind: str
    values: dict
    seed: int = 0

    def __post_init__(self):
        if self.model_kind not in MODEL_KINDS:
            raise InputError(f"unknown model kind {self.model_kind!r}")

    @classmethod
    def defaults(cls, kind: str, seed: int = 0, overrides: Optional[dict] = None) -> "Hyperparameters":
        if kind not in MODEL_KINDS:
            raise InputError(f"unknown model kind {kind!r}")
        values = dict(DEFAULT_HYPERPARAMETERS[kind])
        for key, value in (overrides or {}).items():
            if key not in values:
                raise InputError(f"{kind} has no hyperparameter {key!r}")
            values[key] = value
        return cls(model_kind=kind, values=values, seed=seed)


@dataclass
class TrainedModel:
    kind: str
    hyperparameters: Hyperparameters
    n_features: int
    state: dict
    vocab_fingerprint: str = ""
    metadata: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "format_version": 1,
            "kind": self.kind,
            "hyperparameters": self.hyperparameters.values,
            "seed": self.hyperparameters.seed,
            "n_features": self.n_features,
            "vocabulary_fingerprint": self.vocab_fingerprint,
            "metadata": self.metadata,
            "state": self.state,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrainedModel":
        if data.get("format_version") != 1:
            raise InputError(f"unsupported model container version {data.get('format_version')!r}")
        return cls(
            kind=data["kind"],
            hyperparameters=Hyperparameters(
                model_kind=data["kind"], values=data["hyperparameters"], seed=data.get("seed", 0)
            ),
            n_features=data["n_features"],
            state=data["state"],
            vocab_fingerprint=data.get("vocabulary_fingerprint", ""),
            metadata=data.get("metadata", {}),
        )


MatrixLike = Union[FeatureMatrix, np.ndarray, Sequence[Sequence[float]]]


def as_dense(X: MatrixLike) -> np.ndarray:
    if isinstance(X, FeatureMatrix):
        return X.to_dense()
    return np.atleast_2d(np.asarray(X, dtype=float))


def as_labels(y: Sequence[int]) -> np.ndarray:
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise InputError("labels must be a flat sequence")
    if not np.isin(arr, (0, 1)).all():
        raise InputError("labels must be 0 or 1")
    return arr.astype(int)


def require_both_classes(y: np.ndarray) -> None:
    if len(np.unique(y)) < 2:
        raise TrainingError("training data must contain both classes")


# fitter(X, y, params, seed) -> (state, extra_metadata)
Fitter = Callable[[np.ndarray, np.ndarray, dict, int], tuple[dict, dict]]
Predictor = Callable[[dict, np.ndarray], np.ndarray]

_FITTERS: dict[str, Fitter] = {}
_PREDICTORS: dict[str, Predictor] = {}


def register(kind: str, fitter: Fitter, predictor: Predictor) -> None:
    _FITTERS[kind] = fitter
    _PREDICTORS[kind] = predictor


def train(
    kind: str,
    X: MatrixLike,
    y: Sequence[int],
    seed: int = 0,
    overrides: Optional[dict] = None,
    vocab_fingerprint: str = "",
) -> TrainedModel:
    params = Hyperparameters.defaults(kind, seed=seed, overrides=overrides)
    dense = as_dense(X)
    labels = as_labels(y)
    if dense.shape[0] != len(labels):
        raise InputError(f"row/label mismatch: {dense.shape[0]} rows, {len(labels)} labels")
    if not np.isfinite(dense).all():
        raise InputError("feature matrix contains non-finite values")
    state, extra = _FITTERS[kind](dense, labels, params.values, seed)
    metadata = {
        "seed": seed,
        "n_samples": int(dense.shape[0]),
        "trained_at": datetime.now(timezone.utc).isoformat(),
    }
    metadata.update(extra)
    return TrainedModel(
        kind=kind,
        hyperparameters=params,
        n_features=int(dense.shape[1]),
        state=state,
        vocab_fingerprint=vocab_fingerprint,
        metadata=metadata,
    )


def predict(model: TrainedModel, X: MatrixLike) -> list[int]:
    """One binary label per row; deterministic for a given model."""
    dense = as_dense(X)
    if dense.size == 0 and dense.shape[0] == 0:
        return []
    if dense.shape[1] != model.n_features:
        raise InputError(
            f"feature count mismatch: model expects {model.n_features}, got {dense.shape[1]}"
        )
    if isinstance(X, FeatureMatrix) and model.vocab_fingerprint:
        pass  # fingerprint checks happen in the pipeline, where the vocabulary is known
    labels = _PREDICTORS[model.kind](model.state, dense)
    return [int(v) for v in labels]


def save_model(model: TrainedModel, path: str | Path, vocabulary: Optional[Vocabulary] = None) -> None:
    """Write the versioned container; embedding the vocabulary makes the file
    self-sufficient for predicting from raw corpus text."""
    payload = model.to_json_dict()
    if vocabulary is not None:
        payload["vocabulary"] = vocabulary.to_json_dict()
    Path(path).write_text(json.dumps(payload, ensure_ascii=False))


def load_model(path: str | Path) -> tuple[TrainedModel, Optional[Vocabulary]]:
    payload = json.loads(Path(path).read_text())
    vocabulary = None
    if "vocabulary" in payload:
        vocabulary = Vocabulary.from_json_dict(payload["vocabulary"])
    return TrainedModel.from_json_dict(payload), vocabulary
