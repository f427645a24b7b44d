import json

import numpy as np
import pytest

import oracles
from emogait.affect import (
    ClassProbabilities,
    EmotionLabel,
    valence_arousal,
)
from emogait.forest import (
    DecisionTree,
    NormalizationStats,
    RandomForest,
    TreeNode,
    apply_normalizer,
    fit_forest,
    fit_normalizer,
    forest_to_dict,
    load_forest,
    predict_counts_proba,
    predict_proba,
    save_forest,
)


class TestNormalizer:
    def test_midpoint_maps_to_zero(self):
        stats = NormalizationStats(mins=np.array([2.0]), maxs=np.array([6.0]))
        assert apply_normalizer(stats, np.array([4.0]))[0] == 0.0

    def test_endpoints(self):
        stats = NormalizationStats(mins=np.array([2.0]), maxs=np.array([6.0]))
        assert apply_normalizer(stats, np.array([2.0]))[0] == -1.0
        assert apply_normalizer(stats, np.array([6.0]))[0] == 1.0

    def test_constant_column_maps_to_zero(self):
        stats = fit_normalizer(np.array([[3.0, 1.0], [3.0, 2.0]]))
        out = apply_normalizer(stats, np.array([99.0, 1.5]))
        assert out[0] == 0.0
        assert out[1] == 0.0

    def test_out_of_range_clamps(self):
        stats = NormalizationStats(mins=np.array([0.0]), maxs=np.array([1.0]))
        assert apply_normalizer(stats, np.array([5.0]))[0] == 1.0
        assert apply_normalizer(stats, np.array([-5.0]))[0] == -1.0

    def test_empty_matrix_rejected(self):
        with pytest.raises(ValueError):
            fit_normalizer(np.empty((0, 3)))

    def test_matrix_input(self, rng):
        X = rng.normal(size=(20, 5))
        stats = fit_normalizer(X)
        out = apply_normalizer(stats, X)
        assert out.min() >= -1.0 and out.max() <= 1.0
        assert np.isclose(out.min(), -1.0) and np.isclose(out.max(), 1.0)


def toy_axis_set(rng, n=30):
    """Two classes separable by x0 > 0."""
    X = rng.normal(0, 1, size=(n, 2))
    X[:, 0] = np.abs(X[:, 0]) * np.where(np.arange(n) % 2 == 0, 1, -1)
    y = (X[:, 0] > 0).astype(int)
    return X, y


class TestForest:
    def test_single_class_gives_single_leaf_trees(self, rng):
        X = rng.normal(size=(12, 4))
        y = np.full(12, 2)
        forest = fit_forest(X, y, seed=0)
        assert len(forest.trees) == 10
        for tree in forest.trees:
            assert tree.root.is_leaf
        probs = predict_proba(forest, rng.normal(size=4))
        assert probs.p_sad == 1.0

    def test_same_seed_identical_serialization(self, rng):
        X, y = toy_axis_set(rng)
        a = json.dumps(forest_to_dict(fit_forest(X, y, seed=42)))
        b = json.dumps(forest_to_dict(fit_forest(X, y, seed=42)))
        assert a == b

    def test_different_seed_differs(self, rng):
        X = rng.normal(size=(40, 6))
        y = rng.integers(0, 4, size=40)
        a = json.dumps(forest_to_dict(fit_forest(X, y, seed=1)))
        b = json.dumps(forest_to_dict(fit_forest(X, y, seed=2)))
        assert a != b

    def test_axis_separable_training_accuracy(self, rng):
        X, y = toy_axis_set(rng)
        forest = fit_forest(X, y, seed=9)
        predictions = [int(np.argmax(predict_counts_proba(forest, row))) for row in X]
        assert predictions == list(y)
        oracle_acc = oracles.exhaustive_tree_accuracy(X.tolist(), y.tolist())
        assert oracle_acc == 1.0

    def test_depth_bound(self, rng):
        X = rng.normal(size=(200, 8))
        y = rng.integers(0, 4, size=200)
        forest = fit_forest(X, y, seed=5)
        for tree in forest.trees:
            assert tree.root.depth() <= 5

    def test_probabilities_on_simplex(self, rng):
        X = rng.normal(size=(60, 6))
        y = rng.integers(0, 4, size=60)
        forest = fit_forest(X, y, seed=3)
        for _ in range(1000):
            probs = predict_counts_proba(forest, rng.normal(0, 2, size=6))
            assert probs.min() >= 0.0
            assert abs(probs.sum() - 1.0) < 1e-12

    def test_hand_built_leaves_average(self):
        # ten stumps on feature 0; leaf distributions averaged by hand
        trees = []
        for k in range(10):
            left = TreeNode(counts=np.array([k, 10 - k, 0, 0]))
            right = TreeNode(counts=np.array([0, 0, 1, 1]))
            trees.append(DecisionTree(TreeNode(feature=0, threshold=0.0, left=left, right=right)))
        forest = RandomForest(trees=trees, seed=0)
        got_left = predict_counts_proba(forest, np.array([-1.0]))
        expected_left = np.mean([[k / 10, (10 - k) / 10, 0, 0] for k in range(10)], axis=0)
        assert np.allclose(got_left, expected_left, atol=1e-15)
        got_right = predict_counts_proba(forest, np.array([1.0]))
        assert np.allclose(got_right, [0, 0, 0.5, 0.5], atol=1e-15)

    def test_argmax_invariant_under_count_rescaling(self, rng):
        X = rng.normal(size=(40, 5))
        y = rng.integers(0, 4, size=40)
        forest = fit_forest(X, y, seed=8)
        v = rng.normal(size=5)
        baseline = int(np.argmax(predict_counts_proba(forest, v)))

        def scale_counts(node, factor):
            if node.is_leaf:
                node.counts = node.counts * factor
            else:
                scale_counts(node.left, factor)
                scale_counts(node.right, factor)

        for tree in forest.trees:
            scale_counts(tree.root, 17)
        assert int(np.argmax(predict_counts_proba(forest, v))) == baseline

    def test_beats_or_matches_exhaustive_oracle_usually(self):
        wins = 0
        for seed in range(100):
            rng = np.random.default_rng(1000 + seed)
            X = rng.normal(0, 1, size=(20, 3))
            X[:, 0] = np.sign(X[:, 0]) * (0.1 + np.abs(X[:, 0]))  # axis gap
            y = (X[:, 0] > 0).astype(int)
            forest = fit_forest(X, y, seed=seed)
            acc = np.mean(
                [int(np.argmax(predict_counts_proba(forest, row))) == lbl
                 for row, lbl in zip(X, y)]
            )
            oracle_acc = oracles.exhaustive_tree_accuracy(X.tolist(), y.tolist())
            if acc >= oracle_acc:
                wins += 1
        assert wins >= 95

    def test_serialization_roundtrip_identical_predictions(self, rng, tmp_path):
        X = rng.normal(size=(50, 6))
        y = rng.integers(0, 4, size=50)
        stats = fit_normalizer(X)
        forest = fit_forest(apply_normalizer(stats, X), y, seed=4, stats=stats)
        path = tmp_path / "forest.json"
        save_forest(forest, path)
        back = load_forest(path)
        assert np.array_equal(back.stats.mins, stats.mins)
        for _ in range(1000):
            v = rng.normal(size=6)
            assert np.array_equal(predict_counts_proba(forest, v),
                                  predict_counts_proba(back, v))

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValueError):
            fit_forest(np.empty((0, 3)), np.empty(0, dtype=int), seed=0)


class TestClassProbabilities:
    def test_validation(self):
        with pytest.raises(ValueError):
            ClassProbabilities(0.5, 0.5, 0.5, 0.5)
        with pytest.raises(ValueError):
            ClassProbabilities(-0.1, 0.4, 0.4, 0.3)

    def test_tie_break_prefers_earlier_class(self):
        probs = ClassProbabilities(0.25, 0.25, 0.25, 0.25)
        assert probs.argmax_label() == EmotionLabel.Happy


class TestValenceArousal:
    def test_unit_probability_columns(self):
        cases = [
            (ClassProbabilities(1, 0, 0, 0), (0.67, -0.35)),
            (ClassProbabilities(0, 1, 0, 0), (-0.04, 0.86)),
            (ClassProbabilities(0, 0, 1, 0), (-0.74, -0.37)),
            (ClassProbabilities(0, 0, 0, 1), (0.0, 0.0)),
        ]
        for probs, (valence, arousal) in cases:
            affect = valence_arousal(probs)
            assert affect.valence == pytest.approx(valence, abs=1e-15)
            assert affect.arousal == pytest.approx(arousal, abs=1e-15)

    def test_linearity(self, rng):
        for _ in range(50):
            p = rng.dirichlet(np.ones(4))
            q = rng.dirichlet(np.ones(4))
            alpha = float(rng.uniform())
            mix = alpha * p + (1 - alpha) * q
            a = valence_arousal(ClassProbabilities.from_array(mix))
            ap = valence_arousal(ClassProbabilities.from_array(p))
            aq = valence_arousal(ClassProbabilities.from_array(q))
            assert a.valence == pytest.approx(alpha * ap.valence + (1 - alpha) * aq.valence,
                                              abs=1e-12)
            assert a.arousal == pytest.approx(alpha * ap.arousal + (1 - alpha) * aq.arousal,
                                              abs=1e-12)

    def test_range_over_simplex(self, rng):
        for _ in range(200):
            affect = valence_arousal(ClassProbabilities.from_array(rng.dirichlet(np.ones(4))))
            assert -0.74 - 1e-12 <= affect.valence <= 0.67 + 1e-12
            assert -0.37 - 1e-12 <= affect.arousal <= 0.86 + 1e-12
