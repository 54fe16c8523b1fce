"""Greedy binary decision trees: gini classification and squared-error regression.

Candidate thresholds are midpoints between consecutive distinct sorted values
of a feature. The best split maximizes impurity decrease; ties break to the
lower feature index, then the lower threshold, which the split search
guarantees by scanning features in ascending order and replacing the incumbent
only on strict improvement. Leaves predict the (weighted) majority label, ties
to 0; regression leaves carry the target mean unless the caller overrides
leaf values (gradient boosting does).

Node layout is a plain dict so trees serialize as JSON:
    {"feature": j, "threshold": t, "left": ..., "right": ...}
    {"leaf": leaf_id, "value": label_or_float}
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from newsbench.errors import InputError
from newsbench.models import base


def gini(weight0: float, weight1: float) -> float:
    total = weight0 + weight1
    if total <= 0:
        return 0.0
    p0 = weight0 / total
    p1 = weight1 / total
    return 1.0 - p0 * p0 - p1 * p1


def _best_threshold_classification(
    col: np.ndarray, y: np.ndarray, weights: np.ndarray
) -> Optional[tuple[float, float]]:
    """Best (impurity decrease, threshold) for one feature, or None."""
    order = np.argsort(col, kind="stable")
    sorted_col = col[order]
    sorted_w = weights[order]
    sorted_w1 = sorted_w * (y[order] == 1)

    cut = np.nonzero(sorted_col[:-1] < sorted_col[1:])[0]
    if cut.size == 0:
        return None
    w_total = float(sorted_w.sum())
    w1_total = float(sorted_w1.sum())
    parent = gini(w_total - w1_total, w1_total)

    cum_w = np.cumsum(sorted_w)[cut]
    cum_w1 = np.cumsum(sorted_w1)[cut]
    left_w0 = cum_w - cum_w1
    right_w = w_total - cum_w
    right_w1 = w1_total - cum_w1
    right_w0 = right_w - right_w1

    def _gini_vec(w0, w1):
        total = w0 + w1
        with np.errstate(divide="ignore", invalid="ignore"):
            out = 1.0 - (w0 / total) ** 2 - (w1 / total) ** 2
        return np.where(total > 0, out, 0.0)

    decrease = (
        parent
        - (cum_w / w_total) * _gini_vec(left_w0, cum_w1)
        - (right_w / w_total) * _gini_vec(right_w0, right_w1)
    )
    best = int(np.argmax(decrease))  # first max = lowest threshold
    if decrease[best] <= 0.0:
        return None
    threshold = 0.5 * (sorted_col[cut[best]] + sorted_col[cut[best] + 1])
    return float(decrease[best]), float(threshold)


def _best_threshold_regression(
    col: np.ndarray, target: np.ndarray
) -> Optional[tuple[float, float]]:
    order = np.argsort(col, kind="stable")
    sorted_col = col[order]
    sorted_t = target[order]

    cut = np.nonzero(sorted_col[:-1] < sorted_col[1:])[0]
    if cut.size == 0:
        return None
    n = len(sorted_t)
    total_sum = float(sorted_t.sum())
    total_sq = float((sorted_t**2).sum())
    parent_sse = total_sq - total_sum**2 / n

    cum_n = cut + 1
    cum_sum = np.cumsum(sorted_t)[cut]
    right_n = n - cum_n
    right_sum = total_sum - cum_sum
    left_sse = np.cumsum(sorted_t**2)[cut] - cum_sum**2 / cum_n
    right_sse = (total_sq - np.cumsum(sorted_t**2)[cut]) - right_sum**2 / right_n
    decrease = parent_sse - left_sse - right_sse

    best = int(np.argmax(decrease))
    if decrease[best] <= 1e-12:
        return None
    threshold = 0.5 * (sorted_col[cut[best]] + sorted_col[cut[best] + 1])
    return float(decrease[best]), float(threshold)


class _TreeBuilder:
    def __init__(
        self,
        X: np.ndarray,
        mode: str,
        y: Optional[np.ndarray] = None,
        target: Optional[np.ndarray] = None,
        weights: Optional[np.ndarray] = None,
        min_samples_split: int = 2,
        max_depth: Optional[int] = None,
        max_features: Optional[int] = None,
        rng: Optional[np.random.RandomState] = None,
    ):
        self.X = X
        self.mode = mode
        self.y = y
        self.target = target
        self.weights = weights if weights is not None else np.ones(X.shape[0])
        self.min_samples_split = min_samples_split
        self.max_depth = max_depth
        self.max_features = max_features
        self.rng = rng
        self.n_leaves = 0

    def _candidate_features(self) -> np.ndarray:
        d = self.X.shape[1]
        if self.max_features is None or self.max_features >= d:
            return np.arange(d)
        chosen = self.rng.choice(d, size=self.max_features, replace=False)
        return np.sort(chosen)  # ascending keeps the feature-index tie-break

    def _leaf(self, indices: np.ndarray) -> dict:
        leaf_id = self.n_leaves
        self.n_leaves += 1
        if self.mode == "classification":
            w = self.weights[indices]
            w1 = float(w[self.y[indices] == 1].sum())
            w0 = float(w.sum()) - w1
            value = 1 if w1 > w0 else 0  # tie -> 0
        else:
            value = float(self.target[indices].mean())
        return {"leaf": leaf_id, "value": value}

    def build(self, indices: np.ndarray, depth: int = 0) -> dict:
        if len(indices) < self.min_samples_split:
            return self._leaf(indices)
        if self.max_depth is not None and depth >= self.max_depth:
            return self._leaf(indices)
        if self.mode == "classification":
            labels = self.y[indices]
            if (labels == labels[0]).all():
                return self._leaf(indices)
        else:
            values = self.target[indices]
            if float(values.max() - values.min()) == 0.0:
                return self._leaf(indices)

        best: Optional[tuple[float, int, float]] = None
        for j in self._candidate_features():
            col = self.X[indices, j]
            if self.mode == "classification":
                found = _best_threshold_classification(col, self.y[indices], self.weights[indices])
            else:
                found = _best_threshold_regression(col, self.target[indices])
            if found is None:
                continue
            decrease, threshold = found
            if best is None or decrease > best[0]:
                best = (decrease, int(j), threshold)
        if best is None:
            return self._leaf(indices)

        _, feature, threshold = best
        go_left = self.X[indices, feature] <= threshold
        return {
            "feature": feature,
            "threshold": threshold,
            "left": self.build(indices[go_left], depth + 1),
            "right": self.build(indices[~go_left], depth + 1),
        }


def build_classification_tree(
    X: np.ndarray,
    y: np.ndarray,
    weights: Optional[np.ndarray] = None,
    min_samples_split: int = 2,
    max_depth: Optional[int] = None,
    max_features: Optional[int] = None,
    rng: Optional[np.random.RandomState] = None,
) -> dict:
    builder = _TreeBuilder(
        X,
        "classification",
        y=y,
        weights=weights,
        min_samples_split=min_samples_split,
        max_depth=max_depth,
        max_features=max_features,
        rng=rng,
    )
    return builder.build(np.arange(X.shape[0]))


def build_regression_tree(
    X: np.ndarray,
    target: np.ndarray,
    min_samples_split: int = 2,
    max_depth: Optional[int] = None,
) -> dict:
    builder = _TreeBuilder(
        X, "regression", target=target, min_samples_split=min_samples_split, max_depth=max_depth
    )
    return builder.build(np.arange(X.shape[0]))


def tree_apply(node: dict, row: np.ndarray) -> dict:
    """Walk to the leaf dict for one sample."""
    while "leaf" not in node:
        node = node["left"] if row[node["feature"]] <= node["threshold"] else node["right"]
    return node


def tree_predict(node: dict, X: np.ndarray) -> np.ndarray:
    return np.array([tree_apply(node, row)["value"] for row in X])


def tree_leaf_ids(node: dict, X: np.ndarray) -> np.ndarray:
    return np.array([tree_apply(node, row)["leaf"] for row in X], dtype=int)


def set_leaf_values(node: dict, values: dict[int, float]) -> None:
    """Overwrite leaf values in place (used by gradient boosting's Newton step)."""
    if "leaf" in node:
        if node["leaf"] in values:
            node["value"] = values[node["leaf"]]
        return
    set_leaf_values(node["left"], values)
    set_leaf_values(node["right"], values)


def fit_decision_tree(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    # a single-class input yields a single-leaf tree, not an error
    if params.get("criterion", "gini") != "gini":
        raise InputError(f"unsupported criterion {params.get('criterion')!r}")
    root = build_classification_tree(
        X,
        y,
        min_samples_split=int(params["min_samples_split"]),
        max_depth=params["max_depth"],
    )
    return {"tree": root}, {"n_leaves": _count_leaves(root)}


def _count_leaves(node: dict) -> int:
    if "leaf" in node:
        return 1
    return _count_leaves(node["left"]) + _count_leaves(node["right"])


def predict_decision_tree(state: dict, X: np.ndarray) -> np.ndarray:
    return tree_predict(state["tree"], X).astype(int)


base.register("decision_tree", fit_decision_tree, predict_decision_tree)
