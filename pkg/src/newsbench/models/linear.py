"""Linear classifiers: L2-regularized logistic regression and subgradient SGD.

All three minimize 0.5 * w'w + C * sum_i loss(z_i, w.x_i + b) with C = 1 and
labels mapped to z in {-1, +1}; the bias is unregularized.

Logistic loss is solved full-batch with L-BFGS-B down to a gradient norm of
1e-6 (or 1000 iterations); the objective and its analytic gradient live here
and are finite-difference-checked in the tests. Hinge and squared hinge use
epoch-shuffled stochastic subgradient descent at a fixed learning rate, with
the regularizer gradient spread across the samples of each epoch.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from newsbench.models import base


def logistic_objective(
    w: np.ndarray, b: float, X: np.ndarray, z: np.ndarray, c: float
) -> tuple[float, np.ndarray, float]:
    """Objective value and analytic gradient (d/dw, d/db)."""
    margins = z * (X @ w + b)
    value = 0.5 * float(w @ w) + c * float(np.logaddexp(0.0, -margins).sum())
    coeff = -z * expit(-margins)
    grad_w = w + c * (X.T @ coeff)
    grad_b = c * float(coeff.sum())
    return value, grad_w, grad_b


def _signs(y: np.ndarray) -> np.ndarray:
    return np.where(y == 1, 1.0, -1.0)


def fit_logistic(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    base.require_both_classes(y)
    z = _signs(y)
    c = float(params["c"])
    d = X.shape[1]

    def packed(theta: np.ndarray):
        value, grad_w, grad_b = logistic_objective(theta[:-1], theta[-1], X, z, c)
        return value, np.append(grad_w, grad_b)

    result = minimize(
        packed,
        np.zeros(d + 1),
        method="L-BFGS-B",
        jac=True,
        options={"maxiter": int(params["max_iter"]), "gtol": float(params["grad_tol"]), "ftol": 1e-15},
    )
    theta = result.x
    _, grad_w, grad_b = logistic_objective(theta[:-1], theta[-1], X, z, c)
    grad_norm = float(np.linalg.norm(np.append(grad_w, grad_b)))
    return (
        {"weights": theta[:-1].tolist(), "bias": float(theta[-1])},
        {"iterations": int(result.nit), "final_gradient_norm": grad_norm},
    )


def fit_sgd(X: np.ndarray, y: np.ndarray, params: dict, seed: int) -> tuple[dict, dict]:
    """Seeded stochastic subgradient descent for hinge and squared hinge."""
    base.require_both_classes(y)
    z = _signs(y)
    loss = params["loss"]
    lr = float(params["learning_rate"])
    epochs = int(params["epochs"])
    c = float(params["c"])
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    rng = np.random.RandomState(seed)
    for _ in range(epochs):
        for i in rng.permutation(n):
            margin = z[i] * (float(X[i] @ w) + b)
            grad_w = w / n
            grad_b = 0.0
            if margin < 1.0:
                if loss == "hinge":
                    grad_w = grad_w - c * z[i] * X[i]
                    grad_b = -c * z[i]
                else:  # squared_hinge
                    scale = 2.0 * c * (1.0 - margin)
                    grad_w = grad_w - scale * z[i] * X[i]
                    grad_b = -scale * z[i]
            w = w - lr * grad_w
            b = b - lr * grad_b
    return (
        {"weights": w.tolist(), "bias": b},
        {"epochs": epochs},
    )


def predict_linear(state: dict, X: np.ndarray) -> np.ndarray:
    w = np.asarray(state["weights"], dtype=float)
    scores = X @ w + state["bias"]
    return (scores > 0).astype(int)  # decision value 0 maps to label 0


base.register("logistic_regression", fit_logistic, predict_linear)
base.register("sgd_hinge", fit_sgd, predict_linear)
base.register("linear_svc", fit_sgd, predict_linear)
