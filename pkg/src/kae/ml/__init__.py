"""Binary classifiers used for etype alignment and recognition."""

from kae.ml.gbdt import GradientBoostedTrees
from kae.ml.mlp import MLP
from kae.ml.model import ClassifierModel, train_classifier

__all__ = ["ClassifierModel", "GradientBoostedTrees", "MLP", "train_classifier"]
