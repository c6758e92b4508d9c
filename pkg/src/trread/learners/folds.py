"""Seeded stratified k-fold assignment."""

from __future__ import annotations

import numpy as np

from ..errors import TrainingError


def stratified_kfold(labels, k: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Partition row indices into k folds with per-class balance within
    one row. Deterministic given (labels, k, seed)."""
    labels = np.asarray(labels, dtype=int)
    if k < 2:
        raise TrainingError("k must be at least 2")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in np.unique(labels):
        rows = np.flatnonzero(labels == cls)
        if len(rows) < k:
            raise TrainingError(
                f"class {cls} has only {len(rows)} rows; use k <= {len(rows)}")
        shuffled = rng.permutation(rows)
        for j in range(k):
            folds[j].extend(int(i) for i in shuffled[j::k])
    return [np.array(sorted(fold), dtype=int) for fold in folds]
