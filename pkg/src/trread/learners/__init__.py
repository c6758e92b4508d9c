"""From-scratch classifiers and the surrounding experimental machinery:
stratified cross-validation, metrics, hyperparameter search, feature
importance, and rank correlation."""

from .analysis import (
    CorrelationReport,
    ImportanceReport,
    average_ranks,
    mdi_importance,
    permutation_importance,
    spearman_correlation,
)
from .evaluate import (
    EvaluationReport,
    FoldResult,
    confusion_matrix,
    evaluate,
    fit_on_matrix,
)
from .folds import stratified_kfold
from .forest import RandomForestModel, fit_forest
from .logreg import LogisticRegressionModel, loss_and_gradient, train_logreg
from .search import SearchResult, hyperparameter_search
from .serialize import check_model_schema, load_model, save_model
from .tree import TreeNode, build_tree, gini

__all__ = [
    "CorrelationReport",
    "EvaluationReport",
    "FoldResult",
    "ImportanceReport",
    "LogisticRegressionModel",
    "RandomForestModel",
    "SearchResult",
    "TreeNode",
    "average_ranks",
    "build_tree",
    "check_model_schema",
    "confusion_matrix",
    "evaluate",
    "fit_forest",
    "fit_on_matrix",
    "gini",
    "hyperparameter_search",
    "load_model",
    "loss_and_gradient",
    "mdi_importance",
    "permutation_importance",
    "save_model",
    "spearman_correlation",
    "stratified_kfold",
    "train_logreg",
]
