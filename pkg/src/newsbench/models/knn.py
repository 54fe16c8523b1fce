"""K-nearest-neighbors over TF-IDF rows, Euclidean distance.

Distance ties break to the lower training-row index (stable sort); vote ties
go to label 0. The defaults (k=5) are not benchmark-published values.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from newsbench.errors import InputError
from newsbench.models import base


def fit_knn(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    k = int(params["k"])
    if k > X.shape[0]:
        raise InputError(f"k={k} exceeds the {X.shape[0]} training rows")
    if k < 1:
        raise InputError("k must be >= 1")
    return (
        {"k": k, "rows": X.tolist(), "labels": y.tolist()},
        {"n_neighbors": k},
    )


def predict_knn(state: dict, X: np.ndarray) -> np.ndarray:
    train_rows = np.asarray(state["rows"], dtype=float)
    train_labels = np.asarray(state["labels"], dtype=int)
    k = state["k"]
    distances = cdist(X, train_rows, metric="euclidean")
    labels = np.zeros(X.shape[0], dtype=int)
    for i in range(X.shape[0]):
        order = np.argsort(distances[i], kind="stable")[:k]  # stable: index tie-break
        votes = train_labels[order]
        ones = int(votes.sum())
        labels[i] = 1 if ones > k - ones else 0  # vote tie -> 0
    return labels


base.register("knn", fit_knn, predict_knn)
