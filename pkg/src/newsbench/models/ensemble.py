"""Tree ensembles: random forest, AdaBoost with stumps, gradient boosting.

Random forest grows seeded bootstrap trees with sqrt-of-features considered
per split and predicts by majority vote (tie to 0). With one tree, bootstrap
off and all features, it reduces exactly to the plain decision tree.

AdaBoost fits depth-1 trees on reweighted data. The stage weight is
learning_rate * 0.5 * ln((1 - e) / e); sample weights are renormalized each
round. A first stump with weighted error >= 0.5 is a degenerate learner and
aborts training; a perfect stump (e = 0) is kept with a clamped stage weight
and stops the loop.

Gradient boosting minimizes logistic loss from a log-odds base score: each
round fits a depth-limited regression tree to residuals y - sigmoid(F), sets
leaf values by a Newton step, and moves F by the learning rate. The per-round
training loss is recorded so monotonicity is checkable after the fact.
"""

from __future__ import annotations

import math

import numpy as np

from newsbench.errors import TrainingError
from newsbench.models import base
from newsbench.models.tree import (
    build_classification_tree,
    build_regression_tree,
    tree_leaf_ids,
    tree_predict,
    set_leaf_values,
)

ADABOOST_EPS_FLOOR = 1e-16


def resolve_max_features(spec, n_features: int) -> int | None:
    if spec is None:
        return None
    if spec == "sqrt":
        return max(1, int(math.isqrt(n_features)))
    return int(spec)


def fit_random_forest(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    n, d = X.shape
    n_trees = int(params["n_trees"])
    max_features = resolve_max_features(params["max_features"], d)
    bootstrap = bool(params["bootstrap"])
    master = np.random.RandomState(seed)
    trees = []
    for _ in range(n_trees):
        tree_rng = np.random.RandomState(master.randint(0, 2**31 - 1))
        if bootstrap:
            indices = tree_rng.randint(0, n, size=n)
        else:
            indices = np.arange(n)
        root = build_classification_tree(
            X[indices],
            y[indices],
            max_depth=params["max_depth"],
            max_features=max_features,
            rng=tree_rng,
        )
        trees.append(root)
    return {"trees": trees}, {"n_trees": n_trees}


def predict_random_forest(state: dict, X: np.ndarray) -> np.ndarray:
    votes = np.zeros(X.shape[0])
    for root in state["trees"]:
        votes += tree_predict(root, X)
    majority = len(state["trees"]) / 2.0
    return (votes > majority).astype(int)  # exact tie -> 0


def fit_adaboost(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    n = X.shape[0]
    learning_rate = float(params["learning_rate"])
    n_estimators = int(params["n_estimators"])
    signs = np.where(y == 1, 1.0, -1.0)
    weights = np.full(n, 1.0 / n)

    stumps: list[dict] = []
    alphas: list[float] = []
    trace = {"epsilons": [], "alphas": [], "weight_sums": []}
    for round_index in range(n_estimators):
        stump = build_classification_tree(X, y, weights=weights, max_depth=1)
        predicted = tree_predict(stump, X)
        miss = predicted != y
        epsilon = float(weights[miss].sum())
        if epsilon >= 0.5:
            if round_index == 0:
                raise TrainingError(
                    f"degenerate first learner: weighted error {epsilon:.4f} >= 0.5"
                )
            break
        clamped = max(epsilon, ADABOOST_EPS_FLOOR)
        alpha = learning_rate * 0.5 * math.log((1.0 - clamped) / clamped)
        stumps.append(stump)
        alphas.append(alpha)
        h_signs = np.where(predicted == 1, 1.0, -1.0)
        weights = weights * np.exp(-alpha * signs * h_signs)
        weights = weights / weights.sum()
        trace["epsilons"].append(epsilon)
        trace["alphas"].append(alpha)
        trace["weight_sums"].append(float(weights.sum()))
        if epsilon == 0.0:
            break
    return {"stumps": stumps, "alphas": alphas}, {"rounds": len(stumps), "trace": trace}


def adaboost_stage_weight(epsilon: float, learning_rate: float = 1.0) -> float:
    """Closed-form stage weight for a weighted error rate."""
    clamped = max(epsilon, ADABOOST_EPS_FLOOR)
    return learning_rate * 0.5 * math.log((1.0 - clamped) / clamped)


def predict_adaboost(state: dict, X: np.ndarray) -> np.ndarray:
    score = np.zeros(X.shape[0])
    for alpha, stump in zip(state["alphas"], state["stumps"]):
        h_signs = np.where(tree_predict(stump, X) == 1, 1.0, -1.0)
        score += alpha * h_signs
    return (score > 0).astype(int)  # sign 0 -> label 0


def _sigmoid(values: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-values))


def logistic_loss(y: np.ndarray, scores: np.ndarray) -> float:
    # sum of log(1 + exp(F)) - y*F, computed stably
    return float((np.logaddexp(0.0, scores) - y * scores).sum())


def fit_gradient_boosting(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    learning_rate = float(params["learning_rate"])
    n_estimators = int(params["n_estimators"])
    max_depth = int(params["max_depth"])

    positive_rate = float(y.mean())
    base_score = math.log(positive_rate / (1.0 - positive_rate))
    scores = np.full(X.shape[0], base_score)
    losses = [logistic_loss(y, scores)]

    trees: list[dict] = []
    for _ in range(n_estimators):
        probs = _sigmoid(scores)
        residuals = y - probs
        root = build_regression_tree(X, residuals, max_depth=max_depth)
        leaf_ids = tree_leaf_ids(root, X)
        hessian = probs * (1.0 - probs)
        leaf_values: dict[int, float] = {}
        for leaf in np.unique(leaf_ids):
            members = leaf_ids == leaf
            denominator = float(hessian[members].sum())
            numerator = float(residuals[members].sum())
            leaf_values[int(leaf)] = numerator / max(denominator, 1e-12)
        set_leaf_values(root, leaf_values)
        trees.append(root)
        scores = scores + learning_rate * tree_predict(root, X)
        losses.append(logistic_loss(y, scores))
    return (
        {"base_score": base_score, "trees": trees, "learning_rate": learning_rate},
        {"train_loss": losses},
    )


def predict_gradient_boosting(state: dict, X: np.ndarray) -> np.ndarray:
    scores = np.full(X.shape[0], state["base_score"])
    for root in state["trees"]:
        scores = scores + state["learning_rate"] * tree_predict(root, X)
    return (_sigmoid(scores) >= 0.5).astype(int)


base.register("random_forest", fit_random_forest, predict_random_forest)
base.register("adaboost", fit_adaboost, predict_adaboost)
base.register("gradient_boosting", fit_gradient_boosting, predict_gradient_boosting)
