from __future__ import annotations

import numpy as np
import pytest

from newsbench.errors import InputError
from newsbench.models import (
    import_external_predictions,
    predict,
    train,
    write_external_predictions,
)

X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
Y = [0, 0, 1, 1]


class TestKnn:
    def test_identity_query_k1(self):
        model = train("knn", X, Y, overrides={"k": 1})
        assert predict(model, X) == Y

    def test_majority_of_three(self):
        model = train("knn", X, Y, overrides={"k": 3})
        # query near the two 1-labeled rows
        assert predict(model, [[1.0, 0.9]]) == [1]

    def test_vote_tie_goes_to_zero(self):
        model = train("knn", X, Y, overrides={"k": 4})
        assert predict(model, [[0.5, 0.5]]) == [0]

    def test_distance_tie_lower_row_index(self):
        rows = np.array([[1.0], [1.0], [3.0]])
        model = train("knn", rows, [1, 0, 0], overrides={"k": 1})
        # both training rows at distance 0; row 0 wins
        assert predict(model, [[1.0]]) == [1]

    def test_k_larger_than_train_rejected(self):
        with pytest.raises(InputError):
            train("knn", X, Y, overrides={"k": 9})


class TestExternalPredictions:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "preds.jsonl"
        write_external_predictions("distilbert-run", [("r1", 1), ("r2", 0), ("r3", 1)], path)
        name, predictions = import_external_predictions(path)
        assert name == "distilbert-run"
        assert predictions == [("r1", 1), ("r2", 0), ("r3", 1)]

    def test_bad_label_rejected(self, tmp_path):
        path = tmp_path / "preds.jsonl"
        path.write_text('{"model_name": "m"}\n{"record_id": "r1", "label": 2}\n')
        with pytest.raises(InputError):
            import_external_predictions(path)

    def test_unknown_id_strict(self, tmp_path):
        path = tmp_path / "preds.jsonl"
        write_external_predictions("m", [("r1", 1), ("ghost", 0)], path)
        with pytest.raises(InputError) as excinfo:
            import_external_predictions(path, known_record_ids=["r1"], strict=True)
        assert "ghost" in str(excinfo.value)

    def test_unknown_id_dropped_non_strict(self, tmp_path):
        path = tmp_path / "preds.jsonl"
        write_external_predictions("m", [("r1", 1), ("ghost", 0)], path)
        _, predictions = import_external_predictions(path, known_record_ids=["r1"])
        assert predictions == [("r1", 1)]

    def test_missing_field_rejected(self, tmp_path):
        path = tmp_path / "preds.jsonl"
        path.write_text('{"record_id": "r1"}\n')
        with pytest.raises(InputError):
            import_external_predictions(path)
