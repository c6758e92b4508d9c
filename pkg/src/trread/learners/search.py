"""Two-stage hyperparameter search: seeded random sampling, then a grid
one step wide around the stage-1 best.

Search space: forest n_trees in [100, 1000] (multiples of 100), mtry in
[1, p], min_leaf in [1, 10]; logistic lambda log-uniform in [1e-4, 10].
Grid steps: 100 / 1 / 1, and a factor of sqrt(10) for lambda. Every
evaluated configuration is scored by inner stratified 3-fold accuracy and
recorded in the trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import TrainingError
from ..registry import FeatureMatrix
from .evaluate import evaluate

INNER_FOLDS = 3

N_TREES_RANGE = (100, 1000)
N_TREES_STEP = 100
MIN_LEAF_RANGE = (1, 10)
LAMBDA_RANGE = (1e-4, 10.0)
LAMBDA_FACTOR = math.sqrt(10.0)


@dataclass
class SearchResult:
    model_kind: str
    best_params: dict
    best_score: float
    trace: list[dict]
    seed: int
    budget: int

    def as_dict(self) -> dict:
        return {
            "model": self.model_kind,
            "best_params": self.best_params,
            "best_score": self.best_score,
            "seed": self.seed,
            "budget": self.budget,
            "trace": self.trace,
        }


def _sample_params(kind: str, rng: np.random.Generator, p: int) -> dict:
    if kind == "rf":
        return {
            "n_trees": int(rng.integers(N_TREES_RANGE[0] // N_TREES_STEP,
                                        N_TREES_RANGE[1] // N_TREES_STEP + 1))
            * N_TREES_STEP,
            "mtry": int(rng.integers(1, p + 1)),
            "min_leaf": int(rng.integers(MIN_LEAF_RANGE[0],
                                         MIN_LEAF_RANGE[1] + 1)),
        }
    lo, hi = LAMBDA_RANGE
    exponent = rng.uniform(math.log10(lo), math.log10(hi))
    return {"l2_lambda": float(10.0 ** exponent)}


def _grid_around(kind: str, best: dict, p: int) -> list[dict]:
    if kind == "rf":
        candidates = []
        for dn in (-N_TREES_STEP, 0, N_TREES_STEP):
            for dm in (-1, 0, 1):
                for dl in (-1, 0, 1):
                    candidates.append({
                        "n_trees": min(max(best["n_trees"] + dn,
                                           N_TREES_RANGE[0]),
                                       N_TREES_RANGE[1]),
                        "mtry": min(max(best["mtry"] + dm, 1), p),
                        "min_leaf": min(max(best["min_leaf"] + dl,
                                            MIN_LEAF_RANGE[0]),
                                        MIN_LEAF_RANGE[1]),
                    })
        return candidates
    lam = best["l2_lambda"]
    lo, hi = LAMBDA_RANGE
    return [{"l2_lambda": min(max(lam * f, lo), hi)}
            for f in (1.0 / LAMBDA_FACTOR, 1.0, LAMBDA_FACTOR)]


def _params_key(params: dict) -> tuple:
    return tuple(sorted(params.items()))


def hyperparameter_search(
    matrix: FeatureMatrix,
    kind: str,
    budget: int = 20,
    seed: int = 0,
) -> SearchResult:
    if budget < 1:
        raise TrainingError("search budget must be at least 1")
    if kind not in ("rf", "logreg"):
        raise TrainingError(f"unknown model kind: {kind}")
    p = len(matrix.schema)
    rng = np.random.default_rng(seed)

    trace: list[dict] = []
    scored: dict[tuple, float] = {}

    def score(params: dict, stage: str) -> float:
        key = _params_key(params)
        if key in scored:
            return scored[key]
        report = evaluate(matrix, kind, params, k=INNER_FOLDS, seed=seed)
        scored[key] = report.accuracy
        trace.append({"stage": stage, "params": dict(params),
                      "score": report.accuracy})
        return report.accuracy

    best_params: dict = {}
    best_score = -1.0
    for _ in range(budget):
        params = _sample_params(kind, rng, p)
        value = score(params, "random")
        if value > best_score:
            best_score = value
            best_params = params

    for params in _grid_around(kind, best_params, p):
        value = score(params, "grid")
        if value > best_score:
            best_score = value
            best_params = params

    return SearchResult(model_kind=kind, best_params=best_params,
                        best_score=best_score, trace=trace, seed=seed,
                        budget=budget)
