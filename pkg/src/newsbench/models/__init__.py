"""The classifier hub. Importing this package registers every model kind."""

from newsbench.models.base import (
    DEFAULT_HYPERPARAMETERS,
    MODEL_KINDS,
    Hyperparameters,
    TrainedModel,
    feature_space,
    load_model,
    predict,
    save_model,
    train,
)
from newsbench.models import naive_bayes, linear, tree, ensemble, knn  # noqa: F401  (registration)
from newsbench.models.external import import_external_predictions, write_external_predictions

__all__ = [
    "DEFAULT_HYPERPARAMETERS",
    "MODEL_KINDS",
    "Hyperparameters",
    "TrainedModel",
    "feature_space",
    "load_model",
    "predict",
    "save_model",
    "train",
    "import_external_predictions",
    "write_external_predictions",
]
