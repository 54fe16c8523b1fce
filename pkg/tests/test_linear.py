from __future__ import annotations

import numpy as np
import pytest

from newsbench.errors import InputError, TrainingError
from newsbench.models import predict, train
from newsbench.models.linear import logistic_objective

SEPARABLE_X = np.array([[0.0, 0.0], [0.0, 1.0], [3.0, 3.0], [4.0, 3.0]])
SEPARABLE_Y = [0, 0, 1, 1]


def central_difference_gradient(X, z, c, w, b, step=1e-5):
    def value(wv, bv):
        return logistic_objective(wv, bv, X, z, c)[0]

    grad_w = np.zeros_like(w)
    for j in range(len(w)):
        bump = np.zeros_like(w)
        bump[j] = step
        grad_w[j] = (value(w + bump, b) - value(w - bump, b)) / (2 * step)
    grad_b = (value(w, b + step) - value(w, b - step)) / (2 * step)
    return grad_w, grad_b


class TestLogistic:
    def test_gradient_matches_finite_differences(self):
        rng = np.random.RandomState(17)
        for _ in range(100):
            n = rng.randint(2, 21)
            d = rng.randint(1, 11)
            X = rng.randn(n, d)
            z = rng.choice([-1.0, 1.0], size=n)
            w = rng.randn(d)
            b = float(rng.randn())
            _, grad_w, grad_b = logistic_objective(w, b, X, z, 1.0)
            fd_w, fd_b = central_difference_gradient(X, z, 1.0, w, b)
            analytic = np.append(grad_w, grad_b)
            numeric = np.append(fd_w, fd_b)
            rel_error = np.linalg.norm(analytic - numeric) / max(np.linalg.norm(numeric), 1e-12)
            assert rel_error <= 1e-5

    def test_gradient_zero_at_origin_balanced(self):
        X = np.array([[1.0, 2.0], [-1.0, 0.5]])
        z = np.array([1.0, -1.0])
        _, _, grad_b = logistic_objective(np.zeros(2), 0.0, X, z, 1.0)
        assert grad_b == pytest.approx(0.0, abs=1e-15)

    def test_converges_to_small_gradient(self):
        model = train("logistic_regression", SEPARABLE_X, SEPARABLE_Y)
        assert model.metadata["final_gradient_norm"] <= 1e-6
        assert predict(model, SEPARABLE_X) == SEPARABLE_Y

    def test_single_class_rejected(self):
        with pytest.raises(TrainingError):
            train("logistic_regression", SEPARABLE_X, [1, 1, 1, 1])

    def test_non_finite_rejected(self):
        bad = SEPARABLE_X.copy()
        bad[0, 0] = np.nan
        with pytest.raises(InputError):
            train("logistic_regression", bad, SEPARABLE_Y)


class TestSgd:
    def test_hinge_separable_converges(self):
        model = train("sgd_hinge", SEPARABLE_X, SEPARABLE_Y, seed=7, overrides={"epochs": 100})
        assert predict(model, SEPARABLE_X) == SEPARABLE_Y

    def test_squared_hinge_separable_converges(self):
        model = train("linear_svc", SEPARABLE_X, SEPARABLE_Y, seed=7, overrides={"epochs": 100})
        assert predict(model, SEPARABLE_X) == SEPARABLE_Y

    def test_deterministic_under_seed(self):
        a = train("sgd_hinge", SEPARABLE_X, SEPARABLE_Y, seed=11)
        b = train("sgd_hinge", SEPARABLE_X, SEPARABLE_Y, seed=11)
        assert a.state == b.state

    def test_all_zero_features_constant_prediction(self):
        X = np.zeros((6, 3))
        y = [0, 1, 0, 1, 0, 1]
        model = train("sgd_hinge", X, y, seed=1)
        predictions = predict(model, X)
        assert len(set(predictions)) == 1

    def test_zero_decision_value_maps_to_zero(self):
        state = {"weights": [0.0, 0.0], "bias": 0.0}
        from newsbench.models.linear import predict_linear

        assert predict_linear(state, np.array([[1.0, 2.0]])).tolist() == [0]
