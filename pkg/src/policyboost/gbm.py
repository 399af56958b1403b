"""Second-order gradient-boosted regression trees.

Squared-error loss only (g = yhat - y, h = 1). Trees are grown on
histogram-binned features, either leaf-wise (repeatedly splitting the
leaf with the globally largest gain) or level-wise. Optional
gradient-based one-side sampling keeps all large-gradient rows plus a
reweighted random sample of the rest, and optional exclusive-feature
bundling shares one histogram among (almost) never co-occurring sparse
features. Split statistics for a bundled member are reconstructed exactly
from the merged histogram, so conflict-free bundles change nothing but
speed, and fitted trees always reference original feature names.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_X_y

from .errors import ArgumentError, NumericalError
from .feature_lab import FeatureFrame
from .tree_model import TreeNode, predict_tree_matrix

GAIN_EPS = 1e-12
FORMAT_VERSION = 1


@dataclass(frozen=True)
class BoostConfig:
    n_trees: int = 100
    learning_rate: float = 0.1
    max_leaves: int = 31
    max_depth: int | None = None
    min_samples_leaf: int = 20
    lambda_l2: float = 1.0
    alpha_l1: float = 0.0
    gamma_split: float = 0.0
    n_bins: int = 255
    growth: str = "leaf_wise"
    goss: tuple[float, float] | None = None       # (top_rate a, other_rate b)
    efb: float | None = None                      # max conflict rate
    seed: int = 42

    def __post_init__(self):
        if self.n_trees < 1:
            raise ArgumentError("n_trees must be >= 1")
        if not 0.0 <= self.learning_rate <= 1.0:
            raise ArgumentError("learning_rate must be in [0, 1]")
        if self.max_leaves < 2:
            raise ArgumentError("max_leaves must be >= 2")
        if self.min_samples_leaf < 1:
            raise ArgumentError("min_samples_leaf must be >= 1")
        if self.lambda_l2 < 0 or self.alpha_l1 < 0 or self.gamma_split < 0:
            raise ArgumentError("regularization terms must be >= 0")
        if not 2 <= self.n_bins <= 256:
            raise ArgumentError("n_bins must be in [2, 256]")
        if self.growth not in ("leaf_wise", "level_wise"):
            raise ArgumentError(f"unknown growth mode {self.growth!r}")
        if self.goss is not None:
            a, b = self.goss
            if not 0 < a <= 1:
                raise ArgumentError("goss top_rate must be in (0, 1]")
            if b < 0 or a + b > 1:
                raise ArgumentError("goss rates must satisfy a + b <= 1")
        if self.efb is not None and not 0 <= self.efb < 1:
            raise ArgumentError("efb max_conflict_rate must be in [0, 1)")


@dataclass
class FeatureBundle:
    members: list[str]
    offsets: list[int]


@dataclass
class BoostedEnsemble:
    base_score: float
    learning_rate: float
    trees: list[TreeNode]
    feature_names: list[str]
    config: BoostConfig
    training_trace: list[float] = field(default_factory=list)


def leaf_weight(G: float, H: float, lambda_l2: float,
                alpha_l1: float = 0.0) -> float:
    """Optimal leaf value under L1/L2-regularized second-order objective:
    -sign(G) * max(|G| - alpha, 0) / (H + lambda)."""
    denom = H + lambda_l2
    if denom <= 0:
        raise NumericalError(f"H + lambda must be > 0, got {denom}")
    shrunk = max(abs(G) - alpha_l1, 0.0)
    return -math.copysign(shrunk, G) / denom


def _gain_term(G, H, lambda_l2, alpha_l1):
    if alpha_l1 == 0.0:
        return G * G / (H + lambda_l2)
    shrunk = np.maximum(np.abs(G) - alpha_l1, 0.0)
    return shrunk * shrunk / (H + lambda_l2)


def split_gain(G_L: float, H_L: float, G_R: float, H_R: float,
               lambda_l2: float, gamma_split: float = 0.0,
               alpha_l1: float = 0.0) -> float:
    """Objective improvement of a split, minus the per-leaf charge gamma."""
    return float(0.5 * (_gain_term(G_L, H_L, lambda_l2, alpha_l1)
                        + _gain_term(G_R, H_R, lambda_l2, alpha_l1)
                        - _gain_term(G_L + G_R, H_L + H_R,
                                     lambda_l2, alpha_l1))
                 - gamma_split)


def quantile_bins(values, n_bins: int) -> np.ndarray:
    """Ascending bin edges for histogram split search.

    When the column has at most n_bins distinct values, edges are the
    midpoints between adjacent distinct values (lossless: binned search
    equals exact search). Otherwise edges sit at empirical quantiles,
    deduplicated.
    """
    v = np.asarray(values, dtype=float)
    if len(v) == 0:
        raise ArgumentError("quantile_bins requires non-empty values")
    if n_bins < 2:
        raise ArgumentError("n_bins must be >= 2")
    distinct = np.unique(v)
    if len(distinct) <= 1:
        return np.empty(0)
    if len(distinct) <= n_bins:
        return 0.5 * (distinct[:-1] + distinct[1:])
    qs = np.arange(1, n_bins) / n_bins
    return np.unique(np.quantile(v, qs))


def goss_sample(g, a: float, b: float, seed: int):
    """Gradient-based one-side sampling.

    Keeps the ceil(a*n) largest-|g| rows with weight 1 and a uniform
    sample of floor(b*n) of the remainder with weight (1-a)/b. Returns
    (indices ascending, aligned weights).
    """
    g = np.asarray(g, dtype=float)
    n = len(g)
    if not 0 < a <= 1:
        raise ArgumentError("top_rate a must be in (0, 1]")
    if b < 0 or a + b > 1:
        raise ArgumentError("rates must satisfy 0 <= b and a + b <= 1")
    top_n = min(n, math.ceil(a * n - 1e-9))
    rand_n = math.floor(b * n + 1e-9)
    order = np.argsort(-np.abs(g), kind="stable")
    top = order[:top_n]
    rest = order[top_n:]
    if rand_n > 0 and len(rest) > 0:
        rng = np.random.default_rng(seed)
        picked = rng.choice(rest, size=min(rand_n, len(rest)), replace=False)
    else:
        picked = np.empty(0, dtype=int)
    idx = np.concatenate([top, picked]).astype(np.intp)
    weights = np.concatenate([
        np.ones(len(top)),
        np.full(len(picked), (1.0 - a) / b if len(picked) else 1.0),
    ])
    order2 = np.argsort(idx, kind="stable")
    return idx[order2], weights[order2]


def efb_plan(X, feature_names, max_conflict_rate: float,
             n_bins: int = 255) -> list[FeatureBundle]:
    """Greedy exclusive-feature bundling plan over all features.

    Features are visited by nonzero count descending (ties: original
    index) and placed into the first bundle whose accumulated conflict
    count stays within max_conflict_rate * n_rows. Only non-negative
    features may share a bundle (the zero default must sort below every
    nonzero bin); others get singleton bundles. Offsets reserve disjoint
    merged-bin ranges, slot 0 being the all-default bin.
    """
    if not 0 <= max_conflict_rate < 1:
        raise ArgumentError("max_conflict_rate must be in [0, 1)")
    X = np.asarray(X, dtype=float)
    n = len(X)
    budget = max_conflict_rate * n
    nonzero = [X[:, j] != 0 for j in range(X.shape[1])]
    shareable = [bool((X[:, j] >= 0).all()) for j in range(X.shape[1])]
    visit = sorted(range(X.shape[1]),
                   key=lambda j: (-int(nonzero[j].sum()), j))
    groups: list[list[int]] = []
    occupied: list[np.ndarray] = []
    used: list[float] = []
    for j in visit:
        placed = False
        # all-zero columns carry no candidate splits; keep them as
        # singletons rather than widening some bundle's bin layout
        if shareable[j] and nonzero[j].any():
            for gi, members in enumerate(groups):
                if len(members) == 1 and not shareable[members[0]]:
                    continue
                conflict = int((occupied[gi] & nonzero[j]).sum())
                if used[gi] + conflict <= budget:
                    members.append(j)
                    occupied[gi] |= nonzero[j]
                    used[gi] += conflict
                    placed = True
                    break
        if not placed:
            groups.append([j])
            occupied.append(nonzero[j].copy())
            used.append(0.0)
    bundles = []
    for members in groups:
        members = sorted(members)
        if len(members) == 1:
            bundles.append(FeatureBundle([feature_names[members[0]]], [0]))
            continue
        offsets = []
        cursor = 1  # slot 0 = all members at default
        for j in members:
            offsets.append(cursor)
            nz = X[nonzero[j], j]
            cursor += len(quantile_bins(nz, n_bins)) + 1
        bundles.append(FeatureBundle([feature_names[j] for j in members],
                                     offsets))
    return bundles


def measured_conflict_rate(X, feature_names, bundle: FeatureBundle) -> float:
    """Fraction of rows with more than one bundle member nonzero."""
    idx = [feature_names.index(m) for m in bundle.members]
    counts = (np.asarray(X)[:, idx] != 0).sum(axis=1)
    return float((counts > 1).mean())


# --------------------------------------------------------------------------
# Binned training representation


class _BinnedData:
    """Histogram representation plus a flat candidate-split table.

    Every candidate split of every feature is described by gather indices
    into the node histogram's prefix sums, so a node's best split is one
    vectorized pass. For a dense feature, the left side of candidate i is
    the prefix over its leading bins. For a sparse bundle member, the left
    side is the bundle's all-default mass (node total minus the member's
    own bins) plus the member's leading nonzero bins; that reconstruction
    is exact whenever bundle members never co-occur.
    """

    def __init__(self, X, feature_names, bundles, n_bins):
        X = np.asarray(X, dtype=float)
        n = len(X)
        name_to_col = {m: j for j, m in enumerate(feature_names)}
        per_feature: dict[int, dict] = {}
        cols = []
        col_offsets = []
        total = 0
        for bundle in bundles:
            col_offsets.append(total)
            if len(bundle.members) == 1:
                j = name_to_col[bundle.members[0]]
                edges = quantile_bins(X[:, j], n_bins)
                local = np.searchsorted(edges, X[:, j], side="left")
                m = len(edges) + 1
                k = m - 1  # candidate count
                per_feature[j] = dict(
                    thr=edges,
                    lo=total, hi=total + 1 + np.arange(k),
                    seg_lo=0, seg_hi=0, sparse=0.0)
                cols.append(local.astype(np.int64))
                total += m
            else:
                merged = np.zeros(n, dtype=np.int64)
                bundle_bins = 1
                for member, offset in zip(bundle.members, bundle.offsets):
                    j = name_to_col[member]
                    nz = X[:, j] != 0
                    nz_values = X[nz, j]
                    edges = quantile_bins(nz_values, n_bins)
                    m = len(edges) + 1
                    local = np.searchsorted(edges, X[nz, j], side="left")
                    merged[nz] = offset + local
                    s = total + offset
                    thr = np.concatenate([[0.5 * float(nz_values.min())],
                                          edges])
                    per_feature[j] = dict(
                        thr=thr,
                        lo=s, hi=s + np.arange(m),
                        seg_lo=s, seg_hi=s + m, sparse=1.0)
                    bundle_bins = max(bundle_bins, offset + m)
                cols.append(merged)
                total += bundle_bins
        self.bins = np.column_stack(cols) if cols else np.zeros((n, 0), int)
        self.flat_bins = self.bins + np.asarray(col_offsets, dtype=np.int64)
        self.n_bundles = len(bundles)
        self.total_bins = total
        # every bundle partitions the node rows, so bundle 0's bins alone
        # recover the node's G/H/count totals
        self.first_bundle_bins = (col_offsets[1] if len(col_offsets) > 1
                                  else total)

        order = sorted(per_feature)
        chunks = [per_feature[j] for j in order]
        sizes = [len(c["thr"]) for c in chunks]
        if chunks:
            self.cand_feature = np.repeat(order, sizes)
            self.cand_threshold = np.concatenate([c["thr"] for c in chunks])
            self.cand_hi = np.concatenate([c["hi"] for c in chunks])
            # lo / segment bounds / sparseness are constant per feature;
            # candidates reference them through a small per-feature table
            self.cand_feat_idx = np.repeat(np.arange(len(chunks)), sizes)
            self.feat_lo = np.array([c["lo"] for c in chunks], dtype=np.intp)
            self.feat_seg_hi = np.array([c["seg_hi"] for c in chunks],
                                        dtype=np.intp)
            self.feat_seg_lo = np.array([c["seg_lo"] for c in chunks],
                                        dtype=np.intp)
            self.feat_sparse = np.array([c["sparse"] for c in chunks])
            self.has_sparse = bool(self.feat_sparse.any())
            self.n_cand = len(self.cand_feature)
        else:
            self.cand_feature = np.zeros(0, int)
            self.n_cand = 0
        # scratch buffers reused across every split evaluation
        k = self.n_cand
        self._pref = np.zeros((3, self.total_bins + 1))
        self._left = np.empty((3, k))
        self._right = np.empty((3, k))
        self._base = np.empty((3, k))
        self._gains = np.empty(k)
        self._tmp = np.empty(k)
        self.unit_hessian = False

    def node_histogram(self, rows, gw, hw):
        """(3, total_bins) array of per-bin gradient, hessian, count."""
        flat = self.flat_bins[rows].ravel()
        rep_g = np.repeat(gw[rows], self.n_bundles)
        out = np.empty((3, self.total_bins))
        out[0] = np.bincount(flat, weights=rep_g,
                             minlength=self.total_bins)
        out[2] = np.bincount(flat, minlength=self.total_bins)
        if self.unit_hessian:
            out[1] = out[2]
        else:
            rep_h = np.repeat(hw[rows], self.n_bundles)
            out[1] = np.bincount(flat, weights=rep_h,
                                 minlength=self.total_bins)
        return out


class _NodeRec:
    __slots__ = ("rows", "hist", "G", "H", "n", "depth", "node",
                 "split_feature", "split_threshold", "gain")

    def __init__(self, rows, hist, G, H, n, depth, node):
        self.rows = rows
        self.hist = hist
        self.G = G
        self.H = H
        self.n = n
        self.depth = depth
        self.node = node
        self.split_feature = -1
        self.split_threshold = 0.0
        self.gain = -np.inf


def _best_split_hist(bd: _BinnedData, rec: _NodeRec, config: BoostConfig):
    """Best (gain, feature, threshold) over all candidate splits, from
    the node histogram. Candidates are ordered by (feature index,
    threshold), so argmax's first-wins rule implements the tie-break."""
    k = bd.n_cand
    if k == 0:
        return None
    pref = bd._pref
    np.cumsum(rec.hist, axis=1, out=pref[:, 1:])
    totals = np.array([[rec.G], [rec.H], [rec.n]])
    # per-feature offset term: -pref[lo], plus for sparse bundle members
    # the reconstructed all-default mass totals - (pref[seg_hi] -
    # pref[seg_lo]); tiny (3, n_features) arrays
    base = -pref[:, bd.feat_lo]
    if bd.has_sparse:
        base += bd.feat_sparse * (totals - pref[:, bd.feat_seg_hi]
                                  + pref[:, bd.feat_seg_lo])
    left = np.take(pref, bd.cand_hi, axis=1, out=bd._left)
    left += np.take(base, bd.cand_feat_idx, axis=1, out=bd._base)
    right = np.subtract(totals, left, out=bd._right)
    left_g, left_h, left_n = left
    right_g, right_h, right_n = right
    valid = (left_n >= config.min_samples_leaf) \
        & (right_n >= config.min_samples_leaf)
    if not valid.any():
        return None
    lam, alpha = config.lambda_l2, config.alpha_l1
    parent_term = float(_gain_term(rec.G, rec.H, lam, alpha))
    if alpha == 0.0:
        # gains = 0.5 * (Gl^2/(Hl+lam) + Gr^2/(Hr+lam) - parent) - gamma,
        # assembled in scratch buffers to avoid per-node allocations
        gains = np.multiply(left_g, left_g, out=bd._gains)
        left_h = np.add(left_h, lam, out=left_h)
        gains /= left_h
        tmp = np.multiply(right_g, right_g, out=bd._tmp)
        right_h = np.add(right_h, lam, out=right_h)
        tmp /= right_h
        gains += tmp
    else:
        gains = np.add(_gain_term(left_g, left_h, lam, alpha),
                       _gain_term(right_g, right_h, lam, alpha),
                       out=bd._gains)
    gains -= parent_term
    gains *= 0.5
    gains -= config.gamma_split
    gains[~valid] = -np.inf
    best = int(gains.argmax())
    if not gains[best] > GAIN_EPS:
        return None
    # Histogram subtraction and bundle reconstruction perturb gains at the
    # last few ulps; treat candidates within a tight relative band of the
    # maximum as exact ties so the (feature, threshold) ordering decides,
    # independent of which equivalent layout produced the histogram.
    tol = 1e-9 * max(1.0, abs(gains[best]))
    best = int(np.argmax(gains >= gains[best] - tol))
    return (float(gains[best]), int(bd.cand_feature[best]),
            float(bd.cand_threshold[best]))


def _make_rec(bd, X, gw, hw, rows, depth, config, hist=None):
    if hist is None:
        hist = bd.node_histogram(rows, gw, hw)
    G = float(hist[0, :bd.first_bundle_bins].sum())
    H = float(hist[1, :bd.first_bundle_bins].sum())
    node = TreeNode(value=leaf_weight(G, H, config.lambda_l2,
                                      config.alpha_l1),
                    count=len(rows))
    rec = _NodeRec(rows, hist, G, H, float(len(rows)), depth, node)
    expandable = len(rows) >= 2 * config.min_samples_leaf and (
        config.max_depth is None or depth < config.max_depth)
    if expandable:
        found = _best_split_hist(bd, rec, config)
        if found is not None:
            rec.gain, rec.split_feature, rec.split_threshold = found
    return rec


def _apply_split(bd, X, gw, hw, rec, config, feature_names):
    j, thr = rec.split_feature, rec.split_threshold
    go_left = X[rec.rows, j] <= thr
    rows_l = rec.rows[go_left]
    rows_r = rec.rows[~go_left]
    # subtraction trick: build the smaller child's histogram, derive the
    # sibling's by difference
    if len(rows_l) <= len(rows_r):
        hist_l = bd.node_histogram(rows_l, gw, hw)
        hist_r = rec.hist - hist_l
    else:
        hist_r = bd.node_histogram(rows_r, gw, hw)
        hist_l = rec.hist - hist_r
    rec.hist = None
    rec_l = _make_rec(bd, X, gw, hw, rows_l, rec.depth + 1, config, hist_l)
    rec_r = _make_rec(bd, X, gw, hw, rows_r, rec.depth + 1, config, hist_r)
    rec.node.feature = feature_names[j]
    rec.node.feature_index = j
    rec.node.threshold = thr
    rec.node.left = rec_l.node
    rec.node.right = rec_r.node
    return rec_l, rec_r


def _grow_boost_tree(bd, X, gw, hw, rows, config, feature_names):
    root = _make_rec(bd, X, gw, hw, rows, 0, config)
    n_leaves = 1

    def splittable(rec):
        return rec.gain > GAIN_EPS

    def priority(rec):
        # quantized so ulp-level gain noise cannot reorder expansions
        return -float(f"{rec.gain:.9e}")

    if config.growth == "leaf_wise":
        heap = []
        seq = 0
        if splittable(root):
            heapq.heappush(heap, (priority(root), seq, root))
        while heap and n_leaves < config.max_leaves:
            _, _, rec = heapq.heappop(heap)
            left, right = _apply_split(bd, X, gw, hw, rec, config,
                                       feature_names)
            n_leaves += 1
            for child in (left, right):
                if splittable(child):
                    seq += 1
                    heapq.heappush(heap, (priority(child), seq, child))
    else:
        queue = [root]
        while queue:
            nxt = []
            for rec in queue:
                if n_leaves >= config.max_leaves or not splittable(rec):
                    continue
                left, right = _apply_split(bd, X, gw, hw, rec, config,
                                           feature_names)
                n_leaves += 1
                nxt.extend([left, right])
            queue = nxt
    return root.node


def fit_gbm(frame: FeatureFrame,
            config: BoostConfig = BoostConfig()) -> BoostedEnsemble:
    """Train the boosted ensemble on a feature frame."""
    return _fit(frame.X, np.asarray(frame.y, dtype=float),
                list(frame.feature_names), config)


def _fit(X, y, feature_names, config) -> BoostedEnsemble:
    X = np.asarray(X, dtype=float)
    if len(X) == 0:
        raise ArgumentError("cannot fit on an empty frame")
    if config.efb is not None:
        bundles = efb_plan(X, feature_names, config.efb, config.n_bins)
    else:
        bundles = [FeatureBundle([name], [0]) for name in feature_names]
    bd = _BinnedData(X, feature_names, bundles, config.n_bins)
    # squared loss has unit hessians, so without GOSS reweighting the
    # hessian histogram equals the count histogram
    bd.unit_hessian = config.goss is None
    base = float(y.mean())
    pred = np.full(len(y), base)
    trees: list[TreeNode] = []
    trace: list[float] = []
    # empty histogram sides divide by zero when lambda_l2 == 0; such
    # candidates are masked out after the vectorized gain pass
    with np.errstate(divide="ignore", invalid="ignore"):
        for it in range(config.n_trees):
            g = pred - y
            h = np.ones(len(y))
            if config.goss is not None:
                a, b = config.goss
                rows, w = goss_sample(g, a, b, seed=config.seed + it)
                gw = g.copy()
                hw = h.copy()
                gw[rows] = g[rows] * w
                hw[rows] = h[rows] * w
            else:
                rows = np.arange(len(y), dtype=np.intp)
                gw, hw = g, h
            tree = _grow_boost_tree(bd, X, gw, hw, rows, config,
                                    feature_names)
            trees.append(tree)
            pred = pred + config.learning_rate * predict_tree_matrix(tree, X)
            trace.append(float(np.sqrt(np.mean((pred - y) ** 2))))
    return BoostedEnsemble(base_score=base,
                           learning_rate=config.learning_rate,
                           trees=trees, feature_names=list(feature_names),
                           config=config, training_trace=trace)


def predict_ensemble(model: BoostedEnsemble, rows,
                     feature_names=None) -> np.ndarray:
    """base_score + learning_rate * sum of tree outputs.

    ``rows`` is a FeatureFrame, or a matrix whose columns are described by
    ``feature_names`` (defaults to the fitted order).
    """
    if isinstance(rows, FeatureFrame):
        X, names = rows.X, rows.feature_names
    else:
        X = np.asarray(rows, dtype=float)
        names = list(feature_names) if feature_names is not None \
            else model.feature_names
    if names != model.feature_names:
        missing = [m for m in model.feature_names if m not in names]
        if missing:
            raise ArgumentError(f"rows missing features: {missing}")
        cols = [names.index(m) for m in model.feature_names]
        X = X[:, cols]
    out = np.full(len(X), model.base_score)
    for tree in model.trees:
        out = out + model.learning_rate * predict_tree_matrix(tree, X)
    return out


# --------------------------------------------------------------------------
# Serialization


def _tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"value": node.value, "count": node.count}
    return {"feature": node.feature, "feature_index": node.feature_index,
            "threshold": node.threshold,
            "left": _tree_to_dict(node.left),
            "right": _tree_to_dict(node.right)}


def _tree_from_dict(d: dict) -> TreeNode:
    if "feature" not in d:
        return TreeNode(value=d["value"], count=d["count"])
    return TreeNode(feature=d["feature"], feature_index=d["feature_index"],
                    threshold=d["threshold"],
                    left=_tree_from_dict(d["left"]),
                    right=_tree_from_dict(d["right"]))


def ensemble_to_json(model: BoostedEnsemble) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "base_score": model.base_score,
        "learning_rate": model.learning_rate,
        "feature_names": model.feature_names,
        "config": asdict(model.config),
        "training_trace": model.training_trace,
        "trees": [_tree_to_dict(t) for t in model.trees],
    }
    return json.dumps(doc, indent=2)


def ensemble_from_json(text: str) -> BoostedEnsemble:
    doc = json.loads(text)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ArgumentError(
            f"unsupported model format {doc.get('format_version')!r}")
    cfg = dict(doc["config"])
    if cfg.get("goss") is not None:
        cfg["goss"] = tuple(cfg["goss"])
    config = BoostConfig(**cfg)
    return BoostedEnsemble(
        base_score=doc["base_score"],
        learning_rate=doc["learning_rate"],
        trees=[_tree_from_dict(t) for t in doc["trees"]],
        feature_names=list(doc["feature_names"]),
        config=config,
        training_trace=list(doc["training_trace"]),
    )


class GBMRegressor(BaseEstimator, RegressorMixin):
    """sklearn-style facade over the boosted ensemble."""

    def __init__(self, n_trees=100, learning_rate=0.1, max_leaves=31,
                 max_depth=None, min_samples_leaf=20, lambda_l2=1.0,
                 alpha_l1=0.0, gamma_split=0.0, n_bins=255,
                 growth="leaf_wise", goss=None, efb=None, seed=42):
        self.n_trees = n_trees
        self.learning_rate = learning_rate
        self.max_leaves = max_leaves
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.lambda_l2 = lambda_l2
        self.alpha_l1 = alpha_l1
        self.gamma_split = gamma_split
        self.n_bins = n_bins
        self.growth = growth
        self.goss = goss
        self.efb = efb
        self.seed = seed

    def _config(self) -> BoostConfig:
        return BoostConfig(
            n_trees=self.n_trees, learning_rate=self.learning_rate,
            max_leaves=self.max_leaves, max_depth=self.max_depth,
            min_samples_leaf=self.min_samples_leaf,
            lambda_l2=self.lambda_l2, alpha_l1=self.alpha_l1,
            gamma_split=self.gamma_split, n_bins=self.n_bins,
            growth=self.growth, goss=self.goss, efb=self.efb,
            seed=self.seed)

    def fit(self, X, y, feature_names=None):
        X, y = check_X_y(X, y, dtype=np.float64)
        if feature_names is None:
            feature_names = [f"x{j}" for j in range(X.shape[1])]
        self.model_ = _fit(X, y, list(feature_names), self._config())
        return self

    def predict(self, X):
        X = check_array(X, dtype=np.float64)
        return predict_ensemble(self.model_, X,
                                feature_names=self.model_.feature_names)

    def fit_frame(self, frame: FeatureFrame):
        return self.fit(frame.X, frame.y, frame.feature_names)
