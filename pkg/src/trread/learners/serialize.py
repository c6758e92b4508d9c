"""Versioned JSON model files.

JSON floats round-trip exactly (repr-based), so a loaded model predicts
bit-identically to the one saved.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import SchemaError
from ..registry import FeatureSchema, atomic_write_text
from .forest import RandomForestModel
from .logreg import LogisticRegressionModel
from .tree import TreeNode

MODEL_FORMAT_VERSION = "1"


def _tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"counts": [int(c) for c in node.counts]}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _tree_to_dict(node.left),
        "right": _tree_to_dict(node.right),
    }


def _tree_from_dict(data: dict) -> TreeNode:
    if "counts" in data:
        return TreeNode(counts=np.array(data["counts"], dtype=int))
    return TreeNode(
        feature=int(data["feature"]),
        threshold=float(data["threshold"]),
        left=_tree_from_dict(data["left"]),
        right=_tree_from_dict(data["right"]),
    )


def save_model(model, path: str | Path) -> None:
    if isinstance(model, RandomForestModel):
        payload = {
            "trees": [_tree_to_dict(root) for root in model.trees],
            "n_trees": model.n_trees,
            "mtry": model.mtry,
            "min_leaf": model.min_leaf,
            "max_depth": model.max_depth,
            "seed": model.seed,
            "n_classes": model.n_classes,
            "raw_importances": [float(v) for v in model.raw_importances],
        }
    elif isinstance(model, LogisticRegressionModel):
        payload = {
            "weights": model.weights.tolist(),
            "bias": model.bias.tolist(),
            "mean": model.mean.tolist(),
            "scale": model.scale.tolist(),
            "l2_lambda": model.l2_lambda,
            "n_classes": model.n_classes,
            "converged": model.converged,
            "n_iter": model.n_iter,
            "final_grad_norm": model.final_grad_norm,
        }
    else:
        raise SchemaError(f"cannot serialize model of type {type(model).__name__}")
    document = {
        "format_version": MODEL_FORMAT_VERSION,
        "kind": model.kind,
        "schema_version": model.schema_version,
        "features": list(model.feature_names),
        "payload": payload,
    }
    atomic_write_text(path, json.dumps(document, ensure_ascii=False,
                                       sort_keys=True) + "\n")


def load_model(path: str | Path):
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"{path}: not a valid model file ({exc})") from exc
    if not isinstance(document, dict) or "format_version" not in document:
        raise SchemaError(f"{path}: not a valid model file")
    version = document["format_version"]
    if version != MODEL_FORMAT_VERSION:
        raise SchemaError(
            f"{path}: model format version {version!r} is not supported "
            f"(expected {MODEL_FORMAT_VERSION!r})")
    kind = document.get("kind")
    features = tuple(document.get("features", ()))
    payload = document.get("payload", {})
    if kind == "random_forest":
        return RandomForestModel(
            trees=[_tree_from_dict(t) for t in payload["trees"]],
            n_trees=int(payload["n_trees"]),
            mtry=int(payload["mtry"]),
            min_leaf=int(payload["min_leaf"]),
            max_depth=payload["max_depth"],
            seed=int(payload["seed"]),
            n_classes=int(payload["n_classes"]),
            feature_names=features,
            schema_version=document["schema_version"],
            raw_importances=np.array(payload["raw_importances"], dtype=float),
        )
    if kind == "logistic_regression":
        return LogisticRegressionModel(
            weights=np.array(payload["weights"], dtype=float),
            bias=np.array(payload["bias"], dtype=float),
            mean=np.array(payload["mean"], dtype=float),
            scale=np.array(payload["scale"], dtype=float),
            l2_lambda=float(payload["l2_lambda"]),
            n_classes=int(payload["n_classes"]),
            feature_names=features,
            converged=bool(payload["converged"]),
            n_iter=int(payload["n_iter"]),
            final_grad_norm=float(payload["final_grad_norm"]),
            schema_version=document["schema_version"],
        )
    raise SchemaError(f"{path}: unknown model kind {kind!r}")


def check_model_schema(model, schema: FeatureSchema) -> None:
    """Refuse to apply a model to a matrix missing any of its features."""
    missing = [name for name in model.feature_names
               if name not in schema.names]
    if missing:
        raise SchemaError(
            "matrix lacks features the model was trained on: "
            + ", ".join(missing))
    if model.schema_version != schema.schema_version:
        raise SchemaError(
            f"schema version mismatch: model {model.schema_version!r} "
            f"vs matrix {schema.schema_version!r}")
