"""Naive Bayes classifiers over term counts.

The multinomial variant scores in exact rational arithmetic whenever the
input is integral (which raw term counts always are), so posterior ties
resolve exactly and predictions match direct posterior enumeration digit for
digit. The bernoulli variant binarizes features at > 0 and scores in log
space, including the absent-term factors.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from newsbench.models import base


def _class_masks(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return y == 0, y == 1


def fit_multinomial(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    mask0, mask1 = _class_masks(y)
    return (
        {
            "variant": "multinomial",
            "alpha": float(params["alpha"]),
            "fit_prior": bool(params["fit_prior"]),
            "class_docs": [int(mask0.sum()), int(mask1.sum())],
            "term_counts": [X[mask0].sum(axis=0).tolist(), X[mask1].sum(axis=0).tolist()],
        },
        {},
    )


def _integral(X: np.ndarray) -> bool:
    return bool(np.all(X == np.floor(X)) and np.all(X >= 0))


def predict_multinomial(state: dict, X: np.ndarray) -> np.ndarray:
    alpha = state["alpha"]
    counts = [np.asarray(c, dtype=float) for c in state["term_counts"]]
    class_docs = state["class_docs"]
    n_docs = sum(class_docs)
    vocab_size = len(counts[0])

    if _integral(X):
        return _predict_multinomial_exact(state, X)

    # float fallback for non-integral inputs
    priors = (
        [class_docs[0] / n_docs, class_docs[1] / n_docs]
        if state["fit_prior"]
        else [0.5, 0.5]
    )
    log_theta = [
        np.log((counts[c] + alpha) / (counts[c].sum() + alpha * vocab_size)) for c in (0, 1)
    ]
    score0 = X @ log_theta[0] + np.log(priors[0])
    score1 = X @ log_theta[1] + np.log(priors[1])
    return (score1 > score0).astype(int)


def _predict_multinomial_exact(state: dict, X: np.ndarray) -> np.ndarray:
    alpha = Fraction(state["alpha"])  # floats convert exactly
    counts = [[int(v) for v in row] for row in state["term_counts"]]
    class_docs = state["class_docs"]
    n_docs = sum(class_docs)
    vocab_size = len(counts[0])
    totals = [sum(counts[0]), sum(counts[1])]
    if state["fit_prior"]:
        priors = [Fraction(class_docs[0], n_docs), Fraction(class_docs[1], n_docs)]
    else:
        priors = [Fraction(1, 2), Fraction(1, 2)]
    theta = [
        [
            Fraction(counts[c][t] + alpha, totals[c] + alpha * vocab_size)
            for t in range(vocab_size)
        ]
        for c in (0, 1)
    ]
    labels = np.zeros(X.shape[0], dtype=int)
    for i, row in enumerate(X):
        scores = []
        for c in (0, 1):
            score = priors[c]
            for t in np.nonzero(row)[0]:
                score *= theta[c][t] ** int(row[t])
            scores.append(score)
        labels[i] = 1 if scores[1] > scores[0] else 0  # ties go to 0
    return labels


def fit_bernoulli(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    binary = (X > 0).astype(float)
    mask0, mask1 = _class_masks(y)
    return (
        {
            "variant": "bernoulli",
            "alpha": float(params["alpha"]),
            "fit_prior": bool(params["fit_prior"]),
            "class_docs": [int(mask0.sum()), int(mask1.sum())],
            "doc_freq": [binary[mask0].sum(axis=0).tolist(), binary[mask1].sum(axis=0).tolist()],
        },
        {},
    )


def predict_bernoulli(state: dict, X: np.ndarray) -> np.ndarray:
    alpha = state["alpha"]
    doc_freq = [np.asarray(c, dtype=float) for c in state["doc_freq"]]
    class_docs = state["class_docs"]
    n_docs = sum(class_docs)
    binary = (X > 0).astype(float)

    priors = (
        [class_docs[0] / n_docs, class_docs[1] / n_docs]
        if state["fit_prior"]
        else [0.5, 0.5]
    )
    scores = []
    for c in (0, 1):
        theta = (doc_freq[c] + alpha) / (class_docs[c] + 2.0 * alpha)
        log_theta = np.log(theta)
        log_one_minus = np.log1p(-theta)
        scores.append(binary @ (log_theta - log_one_minus) + log_one_minus.sum() + np.log(priors[c]))
    return (scores[1] > scores[0]).astype(int)


base.register("multinomial_nb", fit_multinomial, predict_multinomial)
base.register("bernoulli_nb", fit_bernoulli, predict_bernoulli)
