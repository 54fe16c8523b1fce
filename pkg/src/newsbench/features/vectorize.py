"""Vocabulary construction and sparse TF-IDF / count matrices.

The TF-IDF variant is fixed so results are reproducible across tools:
tf is the raw in-document term count, idf(t) = ln((1 + N) / (1 + df(t))) + 1,
and every non-empty row is L2-normalized. Documents with no in-vocabulary
tokens become all-zero rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from newsbench.errors import ConfigurationError, InputError


@dataclass
class Vocabulary:
    term_to_index: dict[str, int]
    document_frequency: dict[str, int]
    n_documents: int

    def __post_init__(self):
        indices = sorted(self.term_to_index.values())
        if indices != list(range(len(self.term_to_index))):
            raise InputError("vocabulary indices must be 0..n-1 without gaps")
        for term, df in self.document_frequency.items():
            if not (1 <= df <= self.n_documents):
                raise InputError(f"document frequency of {term!r} out of range: {df}")

    def __len__(self) -> int:
        return len(self.term_to_index)

    @property
    def terms(self) -> list[str]:
        """Terms in index order."""
        ordered = sorted(self.term_to_index.items(), key=lambda kv: kv[1])
        return [term for term, _ in ordered]

    def idf(self, term: str) -> float:
        df = self.document_frequency[term]
        return math.log((1 + self.n_documents) / (1 + df)) + 1.0

    def fingerprint(self) -> str:
        import hashlib

        payload = json.dumps([self.terms, self.n_documents]).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def to_json_dict(self) -> dict:
        return {
            "term_to_index": self.term_to_index,
            "document_frequency": self.document_frequency,
            "n_documents": self.n_documents,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Vocabulary":
        return cls(
            term_to_index={str(k): int(v) for k, v in data["term_to_index"].items()},
            document_frequency={str(k): int(v) for k, v in data["document_frequency"].items()},
            n_documents=int(data["n_documents"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), ensure_ascii=False, indent=2))

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls.from_json_dict(json.loads(Path(path).read_text()))


def build_vocabulary(
    token_lists: Sequence[Sequence[str]],
    min_df: int = 2,
    max_features: Optional[int] = None,
) -> Vocabulary:
    """Build a vocabulary over tokenized documents.

    Terms below min_df are dropped. With max_features set, the most document-
    frequent terms are kept (ties by lexicographic order). Indices are
    assigned in lexicographic term order.
    """
    if not any(token_lists):
        raise InputError("at least one non-empty token list is required")
    df_counter: Counter[str] = Counter()
    for tokens in token_lists:
        df_counter.update(set(tokens))
    kept = {term: df for term, df in df_counter.items() if df >= min_df}
    if max_features is not None and len(kept) > max_features:
        ranked = sorted(kept.items(), key=lambda kv: (-kv[1], kv[0]))
        kept = dict(ranked[:max_features])
    if not kept:
        raise ConfigurationError(
            f"vocabulary is empty after filtering (min_df={min_df}, {len(df_counter)} raw terms)"
        )
    terms = sorted(kept)
    return Vocabulary(
        term_to_index={term: i for i, term in enumerate(terms)},
        document_frequency={term: kept[term] for term in terms},
        n_documents=len(token_lists),
    )


@dataclass
class FeatureMatrix:
    """Sparse document-term matrix with the originating record ids."""

    matrix: sparse.csr_matrix
    row_ids: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.matrix = sparse.csr_matrix(self.matrix)
        if self.row_ids and len(self.row_ids) != self.matrix.shape[0]:
            raise InputError("row_ids length must match the number of rows")

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def to_dense(self) -> np.ndarray:
        return np.asarray(self.matrix.todense(), dtype=float)

    def select_rows(self, indices: Sequence[int]) -> "FeatureMatrix":
        idx = list(indices)
        ids = [self.row_ids[i] for i in idx] if self.row_ids else []
        return FeatureMatrix(self.matrix[idx], ids)

    def save_triplets(self, path: str | Path) -> None:
        """Text triplet format: header 'rows cols nnz', then 'row col weight' lines."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(f"{self.rows} {self.cols} {coo.nnz}\n")
            for i in order:
                handle.write(f"{coo.row[i]} {coo.col[i]} {repr(float(coo.data[i]))}\n")

    @classmethod
    def load_triplets(cls, path: str | Path, row_ids: Optional[list[str]] = None) -> "FeatureMatrix":
        with open(path, "r", encoding="utf-8") as handle:
            header = handle.readline().split()
            if len(header) != 3:
                raise InputError(f"bad triplet header in {path}")
            rows, cols, nnz = (int(x) for x in header)
            r, c, v = [], [], []
            for line in handle:
                parts = line.split()
                if not parts:
                    continue
                r.append(int(parts[0]))
                c.append(int(parts[1]))
                v.append(float(parts[2]))
            if len(v) != nnz:
                raise InputError(f"triplet count mismatch in {path}: header {nnz}, found {len(v)}")
        matrix = sparse.csr_matrix((v, (r, c)), shape=(rows, cols))
        return cls(matrix, row_ids or [])


def _counts(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
) -> sparse.csr_matrix:
    rows, cols, vals = [], [], []
    for row, tokens in enumerate(token_lists):
        counts = Counter(t for t in tokens if t in vocab.term_to_index)
        for term, count in counts.items():
            rows.append(row)
            cols.append(vocab.term_to_index[term])
            vals.append(float(count))
    return sparse.csr_matrix((vals, (rows, cols)), shape=(len(token_lists), len(vocab)))


def count_matrix(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    row_ids: Optional[list[str]] = None,
) -> FeatureMatrix:
    """Raw term-count matrix; out-of-vocabulary tokens are ignored."""
    return FeatureMatrix(_counts(token_lists, vocab), row_ids or [])


def tfidf(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    row_ids: Optional[list[str]] = None,
) -> FeatureMatrix:
    """TF-IDF matrix with smoothed idf and L2-normalized rows."""
    counts = _counts(token_lists, vocab)
    idf = np.array([vocab.idf(term) for term in vocab.terms])
    weighted = counts.multiply(idf).tocsr()
    norms = np.sqrt(np.asarray(weighted.multiply(weighted).sum(axis=1)).ravel())
    scale = np.where(norms > 0, 1.0 / np.where(norms > 0, norms, 1.0), 0.0)
    normalized = sparse.diags(scale) @ weighted
    return FeatureMatrix(normalized.tocsr(), row_ids or [])
