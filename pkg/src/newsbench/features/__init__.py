from newsbench.features.tokenizer import tokenize
from newsbench.features.vectorize import FeatureMatrix, Vocabulary, build_vocabulary, count_matrix, tfidf
from newsbench.features.split import SplitSpec, split, upsample

__all__ = [
    "tokenize",
    "FeatureMatrix",
    "Vocabulary",
    "build_vocabulary",
    "count_matrix",
    "tfidf",
    "SplitSpec",
    "split",
    "upsample",
]
