"""Random forest over the exact CART trees.

Each tree gets its own generator seeded seed + tree_index, draws one
bootstrap sample of size n, then keeps drawing per-node feature subsets
from the same generator. Prediction is a majority vote with ties going to
the lowest class ordinal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError
from .tree import TreeNode, build_tree, predict_one


@dataclass
class RandomForestModel:
    trees: list[TreeNode]
    n_trees: int
    mtry: int
    min_leaf: int
    max_depth: int | None
    seed: int
    n_classes: int
    feature_names: tuple[str, ...]
    schema_version: str = "1"
    raw_importances: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def kind(self) -> str:
        return "random_forest"

    def votes(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        counts = np.zeros((len(X), self.n_classes), dtype=int)
        for root in self.trees:
            for i, x in enumerate(X):
                counts[i, predict_one(root, x)] += 1
        return counts

    def predict(self, X: np.ndarray) -> np.ndarray:
        # argmax takes the first maximum, i.e. the lowest ordinal on ties
        return np.argmax(self.votes(X), axis=1)


def fit_forest(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int = 3,
    n_trees: int = 500,
    mtry: int | None = None,
    min_leaf: int = 1,
    max_depth: int | None = None,
    seed: int = 0,
    feature_names: tuple[str, ...] | None = None,
) -> RandomForestModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or len(X) != len(y):
        raise TrainingError("feature matrix and labels disagree in shape")
    if np.unique(y).size < 2:
        raise TrainingError("training data has a single class")
    n, p = X.shape
    if mtry is None:
        mtry = max(1, int(math.isqrt(p)))
    if not 1 <= mtry <= p:
        raise TrainingError(f"mtry must be in [1, {p}]")
    if min_leaf < 1:
        raise TrainingError("min_leaf must be at least 1")
    if feature_names is None:
        feature_names = tuple(f"f{j}" for j in range(p))
    if len(feature_names) != p:
        raise TrainingError("feature_names length must match matrix width")

    trees = []
    raw = np.zeros(p)
    for t in range(n_trees):
        rng = np.random.default_rng(seed + t)
        boot = rng.integers(0, n, size=n)
        root, importance = build_tree(X[boot], y[boot], n_classes,
                                      min_leaf=min_leaf, max_depth=max_depth,
                                      mtry=mtry, rng=rng)
        trees.append(root)
        raw += importance
    raw /= n_trees
    return RandomForestModel(
        trees=trees, n_trees=n_trees, mtry=mtry, min_leaf=min_leaf,
        max_depth=max_depth, seed=seed, n_classes=n_classes,
        feature_names=tuple(feature_names), raw_importances=raw)
