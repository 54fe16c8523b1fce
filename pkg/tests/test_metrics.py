from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from newsbench.errors import InputError
from newsbench.evaluation.metrics import ConfusionMatrix, confusion, metrics


class TestConfusion:
    def test_direct_count(self):
        cm = confusion([1, 1, 0, 0], [1, 0, 0, 1])
        assert (cm.tp, cm.fn, cm.tn, cm.fp) == (1, 1, 1, 1)

    def test_perfect_prediction(self):
        cm = confusion([1, 0, 1], [1, 0, 1])
        assert cm.fp == 0 and cm.fn == 0
        assert cm.tp == 2 and cm.tn == 1

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            confusion([1], [0, 1])

    def test_non_binary_rejected(self):
        with pytest.raises(InputError):
            confusion([1, 2], [0, 1])

    def test_total_invariant(self):
        cm = confusion([1, 0, 1, 0, 1], [0, 0, 1, 1, 1])
        assert cm.total == 5

    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=60))
    def test_permutation_invariance(self, pairs):
        truth = [t for t, _ in pairs]
        predicted = [p for _, p in pairs]
        cm = confusion(truth, predicted)
        reversed_cm = confusion(truth[::-1], predicted[::-1])
        assert cm == reversed_cm

    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=60))
    def test_polarity_swap(self, pairs):
        truth = [t for t, _ in pairs]
        predicted = [p for _, p in pairs]
        cm = confusion(truth, predicted)
        swapped = confusion([1 - t for t in truth], [1 - p for p in predicted])
        assert (swapped.tp, swapped.tn) == (cm.tn, cm.tp)
        assert (swapped.fp, swapped.fn) == (cm.fn, cm.fp)


class TestMetrics:
    def test_transformer_row_fixture(self):
        # 72/8/5 with TN as the remainder of 100
        report = metrics(ConfusionMatrix(tp=72, fp=5, tn=15, fn=8), "DistilBERT")
        assert report.accuracy == pytest.approx(0.87, abs=1e-12)
        assert report.precision == pytest.approx(72 / 77, abs=1e-12)
        assert report.precision == pytest.approx(0.9351, abs=5e-5)
        assert report.recall == pytest.approx(0.90, abs=1e-12)
        assert report.f1 == pytest.approx(0.9172, abs=5e-5)
        assert not report.degenerate_flags

    def test_perfect_classifier(self):
        report = metrics(ConfusionMatrix(tp=10, fp=0, tn=10, fn=0), "perfect")
        assert report.accuracy == report.precision == report.recall == report.f1 == 1.0

    def test_degenerate_denominators(self):
        report = metrics(ConfusionMatrix(tp=0, fp=0, tn=5, fn=5), "degenerate")
        assert report.precision == 0.0
        assert report.recall == 0.0
        assert report.f1 == 0.0
        assert report.degenerate_flags == frozenset({"precision_undefined", "f1_undefined"})

    def test_recall_flag(self):
        report = metrics(ConfusionMatrix(tp=0, fp=3, tn=5, fn=0), "no-positives")
        assert "recall_undefined" in report.degenerate_flags

    def test_empty_matrix_rejected(self):
        with pytest.raises(InputError):
            metrics(ConfusionMatrix(tp=0, fp=0, tn=0, fn=0), "empty")

    def test_f1_harmonic_identity(self):
        report = metrics(ConfusionMatrix(tp=30, fp=10, tn=40, fn=20), "m")
        expected = 2 * report.precision * report.recall / (report.precision + report.recall)
        assert report.f1 == pytest.approx(expected, abs=1e-12)

    def test_f1_between_precision_and_recall(self):
        for tp, fp, fn in [(5, 2, 3), (1, 9, 1), (8, 1, 6)]:
            report = metrics(ConfusionMatrix(tp=tp, fp=fp, tn=2, fn=fn), "m")
            low = min(report.precision, report.recall)
            high = max(report.precision, report.recall)
            assert low <= report.f1 <= high

    def test_negative_count_rejected(self):
        with pytest.raises(InputError):
            ConfusionMatrix(tp=-1, fp=0, tn=0, fn=0)
