"""CART-style regression tree: greedy axis-aligned splits minimizing RSS,
leaves predicting the region mean.

Splits thresholds are midpoints between adjacent distinct feature values,
routing `value <= threshold` to the left child. Ties are broken by lower
feature index, then lower threshold, so the fitted tree is independent of
row order and of the order in which candidate features are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_X_y

from .errors import ArgumentError
from .feature_lab import FeatureFrame

GAIN_EPS = 1e-12


@dataclass
class TreeNode:
    feature: str | None = None
    feature_index: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    value: float = 0.0
    count: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.is_leaf:
            return f"{pad}leaf value={self.value:.10g} count={self.count}"
        return "\n".join([
            f"{pad}split {self.feature} <= {self.threshold:.10g}",
            self.left.to_text(indent + 1),
            self.right.to_text(indent + 1),
        ])


@dataclass(frozen=True)
class TreeParams:
    max_depth: int | None = 8
    min_samples_leaf: int = 20
    min_samples_split: int = 40

    def __post_init__(self):
        if self.min_samples_leaf < 1:
            raise ArgumentError("min_samples_leaf must be >= 1")
        if self.min_samples_split < 2:
            raise ArgumentError("min_samples_split must be >= 2")


def best_split_column(values: np.ndarray, targets: np.ndarray,
                      min_samples_leaf: int = 1):
    """Best RSS-reducing threshold on one column, or None.

    Returns (threshold, rss_reduction); thresholds are midpoints between
    adjacent distinct sorted values. The lowest qualifying threshold wins
    ties.
    """
    n = len(values)
    if n < 2:
        return None
    order = np.argsort(values, kind="stable")
    v = values[order]
    t = targets[order]
    csum = np.cumsum(t)
    csq = np.cumsum(t * t)
    total_sum = csum[-1]
    total_sq = csq[-1]
    parent_rss = total_sq - total_sum ** 2 / n

    # candidate boundaries: after position i (1-based left count i+1)
    boundary = np.flatnonzero(v[1:] > v[:-1])
    if len(boundary) == 0:
        return None
    n_left = boundary + 1
    ok = (n_left >= min_samples_leaf) & (n - n_left >= min_samples_leaf)
    if not ok.any():
        return None
    n_left = n_left[ok]
    boundary = boundary[ok]
    left_sum = csum[boundary]
    left_sq = csq[boundary]
    right_sum = total_sum - left_sum
    right_sq = total_sq - left_sq
    n_right = n - n_left
    rss = (left_sq - left_sum ** 2 / n_left
           + right_sq - right_sum ** 2 / n_right)
    reduction = parent_rss - rss
    best = int(np.argmax(reduction))  # argmax keeps first (lowest threshold)
    if reduction[best] <= GAIN_EPS:
        return None
    thr = 0.5 * (v[boundary[best]] + v[boundary[best] + 1])
    return float(thr), float(reduction[best])


def best_split(frame: FeatureFrame, feature: str,
               min_samples_leaf: int = 1):
    """Best split on one named feature of a frame, or None."""
    return best_split_column(frame.column(feature), frame.y,
                             min_samples_leaf)


def _grow(X: np.ndarray, y: np.ndarray, idx: np.ndarray,
          names: list[str], params: TreeParams, depth: int) -> TreeNode:
    node = TreeNode(value=float(y[idx].mean()), count=len(idx))
    if len(idx) < params.min_samples_split:
        return node
    if params.max_depth is not None and depth >= params.max_depth:
        return node
    best = None
    for j in range(X.shape[1]):
        cand = best_split_column(X[idx, j], y[idx], params.min_samples_leaf)
        if cand is None:
            continue
        thr, red = cand
        if best is None or red > best[2]:
            best = (j, thr, red)
    if best is None:
        return node
    j, thr, _ = best
    go_left = X[idx, j] <= thr
    node.feature = names[j]
    node.feature_index = j
    node.threshold = thr
    node.left = _grow(X, y, idx[go_left], names, params, depth + 1)
    node.right = _grow(X, y, idx[~go_left], names, params, depth + 1)
    return node


def fit_tree(frame: FeatureFrame, params: TreeParams = TreeParams()) -> TreeNode:
    if len(frame) == 0:
        raise ArgumentError("cannot fit a tree on an empty frame")
    idx = np.arange(len(frame))
    return _grow(frame.X, frame.y, idx, frame.feature_names, params, 0)


def predict_tree(tree: TreeNode, row: dict[str, float]) -> float:
    node = tree
    while not node.is_leaf:
        if node.feature not in row:
            raise ArgumentError(f"row missing feature {node.feature!r}")
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node.value


def predict_tree_matrix(tree: TreeNode, X: np.ndarray) -> np.ndarray:
    """Vectorized prediction; columns indexed by the fitted feature order."""
    out = np.empty(len(X))
    stack = [(tree, np.arange(len(X)))]
    while stack:
        node, idx = stack.pop()
        if node.is_leaf:
            out[idx] = node.value
            continue
        go_left = X[idx, node.feature_index] <= node.threshold
        stack.append((node.left, idx[go_left]))
        stack.append((node.right, idx[~go_left]))
    return out


class RegressionTree(BaseEstimator, RegressorMixin):
    """Greedy RSS-minimizing regression tree with a sklearn-style API."""

    def __init__(self, max_depth=8, min_samples_leaf=20,
                 min_samples_split=40):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.min_samples_split = min_samples_split

    def fit(self, X, y, feature_names=None):
        X, y = check_X_y(X, y, dtype=np.float64)
        if feature_names is None:
            feature_names = [f"x{j}" for j in range(X.shape[1])]
        params = TreeParams(max_depth=self.max_depth,
                            min_samples_leaf=self.min_samples_leaf,
                            min_samples_split=self.min_samples_split)
        self.feature_names_ = list(feature_names)
        self.tree_ = _grow(X, np.asarray(y, dtype=float),
                           np.arange(len(X)), self.feature_names_, params, 0)
        return self

    def predict(self, X):
        X = check_array(X, dtype=np.float64)
        return predict_tree_matrix(self.tree_, X)

    def fit_frame(self, frame: FeatureFrame):
        return self.fit(frame.X, frame.y, frame.feature_names)
