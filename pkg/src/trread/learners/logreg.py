"""Multinomial logistic regression trained by gradient descent with
Armijo backtracking.

Features are standardized on the training data and the statistics live in
the model. The L2 penalty covers weights only, so with lambda large the
model degenerates to the class-prior argmax instead of a uniform guess.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TrainingError


def softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def loss_and_gradient(
    weights: np.ndarray,
    bias: np.ndarray,
    X: np.ndarray,
    y: np.ndarray,
    l2_lambda: float,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus (lambda/2)·||W||²; bias is not penalized."""
    n = len(X)
    probs = softmax(X @ weights.T + bias)
    loss = -np.mean(np.log(probs[np.arange(n), y]))
    loss += 0.5 * l2_lambda * float(np.sum(weights * weights))
    delta = probs
    delta[np.arange(n), y] -= 1.0
    grad_w = delta.T @ X / n + l2_lambda * weights
    grad_b = delta.sum(axis=0) / n
    return float(loss), grad_w, grad_b


@dataclass
class LogisticRegressionModel:
    weights: np.ndarray  # classes x features
    bias: np.ndarray
    mean: np.ndarray
    scale: np.ndarray
    l2_lambda: float
    n_classes: int
    feature_names: tuple[str, ...]
    converged: bool
    n_iter: int
    final_grad_norm: float
    schema_version: str = "1"

    @property
    def kind(self) -> str:
        return "logistic_regression"

    def _standardize(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.scale

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        Z = self._standardize(X)
        return softmax(Z @ self.weights.T + self.bias)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)


def train_logreg(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int = 3,
    l2_lambda: float = 1e-3,
    max_iter: int = 1000,
    tol: float = 1e-6,
    feature_names: tuple[str, ...] | None = None,
) -> LogisticRegressionModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or len(X) != len(y):
        raise TrainingError("feature matrix and labels disagree in shape")
    if np.unique(y).size < 2:
        raise TrainingError("training data has a single class")
    n, p = X.shape
    if feature_names is None:
        feature_names = tuple(f"f{j}" for j in range(p))
    if len(feature_names) != p:
        raise TrainingError("feature_names length must match matrix width")

    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    # Constant columns pass through as zeros.  The threshold scales with
    # the column magnitude because np.std of a constant nonzero column
    # returns rounding noise rather than an exact zero.
    constant = scale <= 1e-12 * np.maximum(1.0, np.abs(mean))
    scale[constant] = 1.0
    Z = (X - mean) / scale

    weights = np.zeros((n_classes, p))
    bias = np.zeros(n_classes)
    step = 1.0
    loss, grad_w, grad_b = loss_and_gradient(weights, bias, Z, y, l2_lambda)
    grad_norm = float(np.sqrt(np.sum(grad_w ** 2) + np.sum(grad_b ** 2)))
    iterations = 0
    while grad_norm >= tol and iterations < max_iter:
        iterations += 1
        # Backtracking line search (Armijo); the accepted step seeds the
        # next iteration and may grow again.
        step = min(step * 2.0, 1024.0)
        sq = grad_norm * grad_norm
        while step > 1e-16:
            trial_w = weights - step * grad_w
            trial_b = bias - step * grad_b
            trial_loss, trial_gw, trial_gb = loss_and_gradient(
                trial_w, trial_b, Z, y, l2_lambda)
            if trial_loss <= loss - 1e-4 * step * sq:
                weights, bias = trial_w, trial_b
                loss, grad_w, grad_b = trial_loss, trial_gw, trial_gb
                grad_norm = float(np.sqrt(np.sum(grad_w ** 2)
                                          + np.sum(grad_b ** 2)))
                break
            step *= 0.5
        else:
            break  # no descent step found at machine precision
    converged = grad_norm < tol

    return LogisticRegressionModel(
        weights=weights, bias=bias, mean=mean, scale=scale,
        l2_lambda=l2_lambda, n_classes=n_classes,
        feature_names=tuple(feature_names), converged=converged,
        n_iter=iterations, final_grad_norm=grad_norm)
