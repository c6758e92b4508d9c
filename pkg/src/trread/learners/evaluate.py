"""Cross-validated evaluation with per-fold retraining.

Imputation statistics come from the training split of each fold only, so
masked cells never leak evaluation information. Macro metrics are the
unweighted mean over the three classes; aggregates are the mean over
folds; a pooled confusion matrix accumulates all held-out predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..registry import FeatureMatrix, apply_impute, impute_means
from .folds import stratified_kfold
from .forest import fit_forest
from .logreg import train_logreg

N_CLASSES = 3

MODEL_KINDS = ("rf", "logreg")


def confusion_matrix(y_true, y_pred, n_classes: int = N_CLASSES) -> np.ndarray:
    cm = np.zeros((n_classes, n_classes), dtype=int)
    for t, p in zip(y_true, y_pred):
        cm[int(t), int(p)] += 1
    return cm


def metrics_from_confusion(cm: np.ndarray) -> dict[str, float]:
    total = int(cm.sum())
    accuracy = float(np.trace(cm)) / total if total else 0.0
    precisions, recalls, f1s = [], [], []
    for c in range(cm.shape[0]):
        tp = float(cm[c, c])
        pred_c = float(cm[:, c].sum())
        true_c = float(cm[c, :].sum())
        precision = tp / pred_c if pred_c else 0.0
        recall = tp / true_c if true_c else 0.0
        f1 = (2 * precision * recall / (precision + recall)
              if precision + recall else 0.0)
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    return {
        "accuracy": accuracy,
        "macro_precision": float(np.mean(precisions)),
        "macro_recall": float(np.mean(recalls)),
        "macro_f1": float(np.mean(f1s)),
    }


@dataclass
class FoldResult:
    index: int
    train_size: int
    test_size: int
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    confusion: list[list[int]]
    converged: bool | None = None  # logistic regression only

    def as_dict(self) -> dict:
        out = {
            "fold": self.index,
            "train_size": self.train_size,
            "test_size": self.test_size,
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "confusion": self.confusion,
        }
        if self.converged is not None:
            out["converged"] = self.converged
        return out


@dataclass
class EvaluationReport:
    model_kind: str
    params: dict
    k: int
    seed: int
    folds: list[FoldResult]
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    pooled_confusion: list[list[int]]
    pooled_accuracy: float
    groups: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "model": self.model_kind,
            "params": self.params,
            "k": self.k,
            "seed": self.seed,
            "groups": self.groups,
            "aggregate": {
                "accuracy": self.accuracy,
                "macro_precision": self.macro_precision,
                "macro_recall": self.macro_recall,
                "macro_f1": self.macro_f1,
            },
            "pooled_confusion": self.pooled_confusion,
            "pooled_accuracy": self.pooled_accuracy,
            "folds": [fold.as_dict() for fold in self.folds],
        }


def _fit(kind: str, X: np.ndarray, y: np.ndarray, params: dict,
         seed: int, feature_names: tuple[str, ...]):
    if kind == "rf":
        return fit_forest(X, y, n_classes=N_CLASSES, seed=seed,
                          feature_names=feature_names, **params)
    if kind == "logreg":
        return train_logreg(X, y, n_classes=N_CLASSES,
                            feature_names=feature_names, **params)
    raise ValueError(f"unknown model kind: {kind}")


def fit_on_matrix(matrix: FeatureMatrix, kind: str, params: dict | None = None,
                  seed: int = 0):
    """Train on the full matrix, imputing masked cells from all rows."""
    params = dict(params or {})
    values = matrix.values_array()
    absent = matrix.absent_array()
    means = impute_means(matrix)
    X = apply_impute(values, absent, means)
    y = matrix.levels_array()
    return _fit(kind, X, y, params, seed, matrix.schema.names)


def evaluate(matrix: FeatureMatrix, kind: str, params: dict | None = None,
             k: int = 10, seed: int = 0) -> EvaluationReport:
    params = dict(params or {})
    y = matrix.levels_array()
    folds = stratified_kfold(y, k=k, seed=seed)
    all_rows = np.arange(len(y))

    fold_results = []
    pooled = np.zeros((N_CLASSES, N_CLASSES), dtype=int)
    for fold_index, test_idx in enumerate(folds):
        train_idx = np.setdiff1d(all_rows, test_idx)
        means = impute_means(matrix, train_idx)
        values = matrix.values_array()
        absent = matrix.absent_array()
        X_train = apply_impute(values[train_idx], absent[train_idx], means)
        X_test = apply_impute(values[test_idx], absent[test_idx], means)
        model = _fit(kind, X_train, y[train_idx], params, seed,
                     matrix.schema.names)
        preds = model.predict(X_test)
        cm = confusion_matrix(y[test_idx], preds)
        pooled += cm
        stats = metrics_from_confusion(cm)
        fold_results.append(FoldResult(
            index=fold_index,
            train_size=len(train_idx),
            test_size=len(test_idx),
            confusion=cm.tolist(),
            converged=getattr(model, "converged", None),
            **stats,
        ))

    aggregate = {key: float(np.mean([getattr(f, key) for f in fold_results]))
                 for key in ("accuracy", "macro_precision", "macro_recall",
                             "macro_f1")}
    return EvaluationReport(
        model_kind=kind,
        params=params,
        k=k,
        seed=seed,
        folds=fold_results,
        pooled_confusion=pooled.tolist(),
        pooled_accuracy=float(np.trace(pooled)) / float(pooled.sum()),
        groups=list(dict.fromkeys(matrix.schema.groups)),
        **aggregate,
    )
