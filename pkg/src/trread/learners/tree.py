"""CART decision tree with exact split selection.

Split quality is compared in integer arithmetic (cross-multiplied sums of
squared class counts), so the chosen tree is bit-for-bit reproducible and
matches an exhaustive-enumeration oracle including all tie cases. Ties go
to the lowest feature index, then the lowest threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class TreeNode:
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    counts: np.ndarray | None = None  # class counts at a leaf

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def gini(counts) -> float:
    total = int(np.sum(counts))
    if total == 0:
        return 0.0
    return 1.0 - sum((int(c) / total) ** 2 for c in counts)


def _class_counts(y: np.ndarray, idx: np.ndarray, n_classes: int) -> list[int]:
    counts = [0] * n_classes
    for i in idx:
        counts[y[i]] += 1
    return counts


def _best_split(
    X: np.ndarray,
    y: np.ndarray,
    idx: np.ndarray,
    features,
    min_leaf: int,
    n_classes: int,
):
    """Best (feature, threshold) by maximum sum_left²/n_left + sum_right²/n_right,
    or None when no candidate strictly decreases Gini impurity.

    Returns (feature, threshold, num, den) where num/den is the exact score.
    """
    n = len(idx)
    total = _class_counts(y, idx, n_classes)
    total_sq = sum(c * c for c in total)
    best = None  # (num, den, feature, threshold)
    for j in features:
        order = idx[np.argsort(X[idx, j], kind="stable")]
        left = [0] * n_classes
        nl = 0
        for pos in range(n - 1):
            row = order[pos]
            left[y[row]] += 1
            nl += 1
            value = X[row, j]
            nxt = X[order[pos + 1], j]
            if value == nxt:
                continue
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            sl = sum(c * c for c in left)
            sr = sum((t - c) * (t - c) for t, c in zip(total, left))
            num = sl * nr + sr * nl
            den = nl * nr
            # Strict improvement keeps the earliest candidate on ties.
            if best is None or num * best[1] > best[0] * den:
                best = (num, den, j, (float(value) + float(nxt)) / 2.0)
    if best is None:
        return None
    num, den, feature, threshold = best
    # Gini decrease > 0 iff num/den > total_sq/n; if the maximum fails,
    # every candidate fails.
    if num * n <= total_sq * den:
        return None
    return feature, threshold, num, den


class _Builder:
    def __init__(self, X, y, n_classes, min_leaf, max_depth, mtry, rng):
        self.X = X
        self.y = y
        self.n_classes = n_classes
        self.min_leaf = min_leaf
        self.max_depth = max_depth
        self.mtry = mtry
        self.rng = rng
        self.n_features = X.shape[1]
        self.raw_importance = np.zeros(self.n_features)

    def _candidate_features(self):
        if self.mtry is None or self.mtry >= self.n_features:
            # All features, and no RNG draw: adding columns while keeping
            # mtry >= p must not perturb the split sequence.
            return range(self.n_features)
        picked = self.rng.choice(self.n_features, size=self.mtry, replace=False)
        return sorted(int(j) for j in picked)

    def build(self) -> TreeNode:
        root = TreeNode()
        n_root = len(self.y)
        # Explicit stack, left child first: the node visit order fixes the
        # per-node RNG draws.
        stack = [(root, np.arange(n_root), 0)]
        while stack:
            node, idx, depth = stack.pop()
            counts = _class_counts(self.y, idx, self.n_classes)
            if (max(counts) == len(idx)
                    or len(idx) < 2 * self.min_leaf
                    or (self.max_depth is not None and depth >= self.max_depth)):
                node.counts = np.array(counts)
                continue
            split = _best_split(self.X, self.y, idx,
                                self._candidate_features(),
                                self.min_leaf, self.n_classes)
            if split is None:
                node.counts = np.array(counts)
                continue
            feature, threshold, num, den = split
            total_sq = sum(c * c for c in counts)
            self.raw_importance[feature] += (
                num / den - total_sq / len(idx)) / n_root
            node.feature = feature
            node.threshold = threshold
            node.left = TreeNode()
            node.right = TreeNode()
            go_left = self.X[idx, feature] <= threshold
            stack.append((node.right, idx[~go_left], depth + 1))
            stack.append((node.left, idx[go_left], depth + 1))
        return root


def build_tree(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    min_leaf: int = 1,
    max_depth: int | None = None,
    mtry: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[TreeNode, np.ndarray]:
    """Fit one tree; returns (root, per-feature raw impurity decrease)."""
    builder = _Builder(np.asarray(X, dtype=float), np.asarray(y, dtype=int),
                       n_classes, min_leaf, max_depth, mtry, rng)
    root = builder.build()
    return root, builder.raw_importance


def predict_one(root: TreeNode, x: np.ndarray) -> int:
    node = root
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return int(np.argmax(node.counts))
