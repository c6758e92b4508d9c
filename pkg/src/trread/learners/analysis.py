"""Feature importance (impurity and permutation) and rank correlation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..registry import FeatureMatrix
from .forest import RandomForestModel


@dataclass
class ImportanceReport:
    features: tuple[str, ...]
    mdi: list[float] | None = None
    permutation: list[float] | None = None
    repeats: int | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        out: dict = {"features": list(self.features)}
        if self.mdi is not None:
            out["mdi"] = self.mdi
        if self.permutation is not None:
            out["permutation"] = self.permutation
            out["repeats"] = self.repeats
            out["seed"] = self.seed
        return out

    def ranked(self, which: str) -> list[tuple[str, float]]:
        scores = getattr(self, which)
        if scores is None:
            raise ValueError(f"no {which} scores in this report")
        pairs = list(zip(self.features, scores))
        return sorted(pairs, key=lambda pair: (-pair[1], pair[0]))


@dataclass
class CorrelationEntry:
    feature: str
    rho: float
    zero_variance: bool


@dataclass
class CorrelationReport:
    entries: list[CorrelationEntry]  # sorted by |rho| descending

    def as_dict(self) -> dict:
        return {"entries": [
            {"feature": e.feature, "rho": e.rho,
             "zero_variance": e.zero_variance}
            for e in self.entries]}


def mdi_importance(model: RandomForestModel) -> ImportanceReport:
    """Mean raw impurity decrease per feature, normalized to sum 1.

    A forest with no splits at all keeps the zeros.
    """
    raw = np.asarray(model.raw_importances, dtype=float)
    total = raw.sum()
    scores = raw / total if total > 0 else raw
    return ImportanceReport(features=tuple(model.feature_names),
                            mdi=[float(v) for v in scores])


def permutation_importance(model, X, y, repeats: int = 10,
                           seed: int = 0) -> ImportanceReport:
    """Mean accuracy drop over seeded shuffles of one column at a time.

    The rows must be held out from training for the drop to measure
    generalized reliance on the feature.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    baseline = float(np.mean(model.predict(X) == y))
    drops = []
    for j in range(X.shape[1]):
        rng = np.random.default_rng(seed + j)
        total = 0.0
        for _ in range(repeats):
            shuffled = X.copy()
            shuffled[:, j] = rng.permutation(shuffled[:, j])
            total += baseline - float(np.mean(model.predict(shuffled) == y))
        drops.append(total / repeats)
    return ImportanceReport(features=tuple(model.feature_names),
                            permutation=drops, repeats=repeats, seed=seed)


def average_ranks(values) -> np.ndarray:
    """1-based ranks with ties sharing their average rank."""
    values = np.asarray(values)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y) -> tuple[float, bool]:
    """Spearman correlation via Pearson on average ranks.

    Returns (rho, zero_variance); a constant vector yields (0, True).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 3 or len(x) != len(y):
        raise ValueError("need at least 3 paired values")
    rx = average_ranks(x)
    ry = average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    vx = float(np.sum(dx * dx))
    vy = float(np.sum(dy * dy))
    if vx == 0.0 or vy == 0.0:
        return 0.0, True
    return float(np.sum(dx * dy) / np.sqrt(vx * vy)), False


def spearman_correlation(matrix: FeatureMatrix) -> CorrelationReport:
    """Per-feature correlation against the level ordinal, strongest first."""
    y = matrix.levels_array()
    values = matrix.values_array()
    entries = []
    for j, name in enumerate(matrix.schema.names):
        rho, flat = spearman_rho(values[:, j], y)
        entries.append(CorrelationEntry(name, rho, flat))
    entries.sort(key=lambda e: (-abs(e.rho), e.feature))
    return CorrelationReport(entries)
