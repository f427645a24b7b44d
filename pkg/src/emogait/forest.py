"""Feature normalization and a from-scratch random forest classifier.

10 depth-limited CART trees fitted on bootstrap samples with Gini-impurity
splits over ceil(sqrt(d)) randomly drawn candidate features per node.
Probabilities are the across-tree average of leaf class frequencies, so the
output feeds directly into the valence/arousal mapping. Everything is
deterministic for a fixed seed.
"""

from __future__ import annotations

import json
import math
import pathlib
from dataclasses import dataclass

import numpy as np

from .affect import ClassProbabilities

N_TREES = 10
MAX_DEPTH = 5
MIN_SAMPLES_SPLIT = 2
N_CLASSES = 4


@dataclass(frozen=True)
class NormalizationStats:
    """Per-dimension training-set minima and maxima for [-1, 1] scaling."""

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self):
        mins = np.asarray(self.mins, dtype=np.float64)
        maxs = np.asarray(self.maxs, dtype=np.float64)
        if mins.shape != maxs.shape or mins.ndim != 1:
            raise ValueError("mins and maxs must be 1-D arrays of equal length")
        if (mins > maxs).any():
            raise ValueError("normalization stats need min <= max per dimension")
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "maxs", maxs)


def fit_normalizer(features: np.ndarray) -> NormalizationStats:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("normalizer needs a non-empty 2-D feature matrix")
    return NormalizationStats(mins=x.min(axis=0), maxs=x.max(axis=0))


def apply_normalizer(stats: NormalizationStats, v: np.ndarray) -> np.ndarray:
    """Map to [-1, 1]: v' = 2(v - min)/(max - min) - 1.

    Constant training dimensions map to 0; out-of-range values clamp.
    """
    v = np.asarray(v, dtype=np.float64)
    span = stats.maxs - stats.mins
    safe = np.where(span > 0, span, 1.0)
    scaled = 2.0 * (v - stats.mins) / safe - 1.0
    scaled = np.where(span > 0, scaled, 0.0)
    return np.clip(scaled, -1.0, 1.0)


class TreeNode:
    """Binary split node; a node with feature None is a leaf holding counts."""

    __slots__ = ("feature", "threshold", "left", "right", "counts")

    def __init__(self, feature=None, threshold=None, left=None, right=None, counts=None):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.counts = counts

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"counts": [int(c) for c in self.counts]}
        return {
            "feature": int(self.feature),
            "threshold": float(self.threshold),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TreeNode":
        if "counts" in obj:
            return cls(counts=np.array(obj["counts"], dtype=np.int64))
        return cls(
            feature=obj["feature"],
            threshold=obj["threshold"],
            left=cls.from_dict(obj["left"]),
            right=cls.from_dict(obj["right"]),
        )

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())


def _gini(counts: np.ndarray) -> float:
    n = counts.sum()
    p = counts / n
    return 1.0 - float((p * p).sum())


def _class_counts(y: np.ndarray, n_classes: int) -> np.ndarray:
    return np.bincount(y, minlength=n_classes)


def _best_split(X, y, feature_ids, n_classes):
    """Lowest weighted Gini impurity; ties break to the lowest feature index,
    then the lowest threshold. Returns None when no feature separates."""
    n = len(y)
    best = None  # (impurity, feature, threshold)
    for f in sorted(int(f) for f in feature_ids):
        values = X[:, f]
        order = np.argsort(values, kind="stable")
        sorted_vals = values[order]
        sorted_y = y[order]
        left_counts = np.zeros(n_classes)
        right_counts = _class_counts(sorted_y, n_classes).astype(float)
        for k in range(n - 1):
            cls = sorted_y[k]
            left_counts[cls] += 1
            right_counts[cls] -= 1
            if sorted_vals[k] == sorted_vals[k + 1]:
                continue
            threshold = 0.5 * (sorted_vals[k] + sorted_vals[k + 1])
            n_left = k + 1
            impurity = (n_left * _gini(left_counts) + (n - n_left) * _gini(right_counts)) / n
            candidate = (impurity, f, threshold)
            if best is None or candidate < best:
                best = candidate
    return best


class DecisionTree:
    """Gini CART tree, depth <= MAX_DEPTH, splits <= MIN_SAMPLES_SPLIT guard."""

    def __init__(self, root: TreeNode, n_classes: int = N_CLASSES):
        self.root = root
        self.n_classes = n_classes

    @classmethod
    def fit(cls, X, y, rng, max_depth=MAX_DEPTH, n_candidates=None,
            n_classes: int = N_CLASSES) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if n_candidates is None:
            n_candidates = math.ceil(math.sqrt(X.shape[1]))
        n_candidates = min(n_candidates, X.shape[1])
        root = cls._build(X, y, rng, 0, max_depth, n_candidates, n_classes)
        return cls(root, n_classes)

    @staticmethod
    def _build(X, y, rng, depth, max_depth, n_candidates, n_classes) -> TreeNode:
        counts = _class_counts(y, n_classes)
        if depth >= max_depth or len(y) < MIN_SAMPLES_SPLIT or _gini(counts) == 0.0:
            return TreeNode(counts=counts)
        features = rng.choice(X.shape[1], size=n_candidates, replace=False)
        split = _best_split(X, y, features, n_classes)
        if split is None:
            return TreeNode(counts=counts)
        _, feature, threshold = split
        mask = X[:, feature] <= threshold
        left = DecisionTree._build(X[mask], y[mask], rng, depth + 1, max_depth,
                                   n_candidates, n_classes)
        right = DecisionTree._build(X[~mask], y[~mask], rng, depth + 1, max_depth,
                                    n_candidates, n_classes)
        return TreeNode(feature=feature, threshold=threshold, left=left, right=right)

    def leaf_counts(self, v: np.ndarray) -> np.ndarray:
        node = self.root
        while not node.is_leaf:
            node = node.left if v[node.feature] <= node.threshold else node.right
        return node.counts

    def predict_proba(self, v: np.ndarray) -> np.ndarray:
        counts = self.leaf_counts(v).astype(float)
        return counts / counts.sum()


@dataclass
class RandomForest:
    trees: list[DecisionTree]
    seed: int
    stats: NormalizationStats | None = None
    n_classes: int = N_CLASSES


def fit_forest(X, y, seed: int, stats: NormalizationStats | None = None,
               n_trees: int = N_TREES, n_classes: int = N_CLASSES) -> RandomForest:
    """Fit `n_trees` trees, each on its own bootstrap sample (n draws with
    replacement). X is expected to be normalized already; `stats` is carried
    along so downstream predictors can normalize raw vectors."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("forest training needs a non-empty 2-D matrix")
    if len(X) != len(y):
        raise ValueError("X and y lengths differ")
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n_trees)]
    trees = []
    for rng in rngs:
        idx = rng.integers(0, len(X), size=len(X))
        trees.append(DecisionTree.fit(X[idx], y[idx], rng, n_classes=n_classes))
    return RandomForest(trees=trees, seed=seed, stats=stats, n_classes=n_classes)


def predict_counts_proba(forest: RandomForest, v: np.ndarray) -> np.ndarray:
    """Across-tree average of leaf class-frequency distributions."""
    probs = np.zeros(forest.n_classes)
    for tree in forest.trees:
        probs += tree.predict_proba(np.asarray(v, dtype=np.float64))
    return probs / len(forest.trees)


def predict_proba(forest: RandomForest, v: np.ndarray) -> ClassProbabilities:
    return ClassProbabilities.from_array(predict_counts_proba(forest, v))


def predict_label(forest: RandomForest, v: np.ndarray) -> int:
    return int(np.argmax(predict_counts_proba(forest, v)))


# ---------------------------------------------------------------------------
# forest files: JSON
# ---------------------------------------------------------------------------


def forest_to_dict(forest: RandomForest) -> dict:
    stats = None
    if forest.stats is not None:
        stats = {"min": forest.stats.mins.tolist(), "max": forest.stats.maxs.tolist()}
    return {
        "seed": forest.seed,
        "stats": stats,
        "trees": [tree.root.to_dict() for tree in forest.trees],
    }


def forest_from_dict(obj: dict) -> RandomForest:
    stats = None
    if obj.get("stats") is not None:
        stats = NormalizationStats(
            mins=np.array(obj["stats"]["min"]), maxs=np.array(obj["stats"]["max"])
        )
    trees = [DecisionTree(TreeNode.from_dict(t)) for t in obj["trees"]]
    return RandomForest(trees=trees, seed=int(obj["seed"]), stats=stats)


def save_forest(forest: RandomForest, path) -> None:
    pathlib.Path(path).write_text(json.dumps(forest_to_dict(forest)))


def load_forest(path) -> RandomForest:
    return forest_from_dict(json.loads(pathlib.Path(path).read_text()))
