import numpy as np
import pytest

from emogait.affect import EmotionLabel
from emogait.lstm import TrainConfig
from emogait.pipeline import (
    classify,
    combined_features,
    load_pipeline,
    prediction_row,
    save_pipeline,
    train_pipeline,
)
from emogait.synth import SynthParams, synth_corpus, synth_gait


@pytest.fixture(scope="module")
def small_pipeline():
    data = []
    for emotion in EmotionLabel:
        for g in synth_corpus(emotion, 6, seed=300 + int(emotion)):
            data.append((g, emotion))
    cfg = TrainConfig(epochs=30, lr_schedule={0: 0.01}, rng_seed=5)
    pipe, losses = train_pipeline(data, cfg)
    return pipe, losses, data


class TestPipeline:
    def test_combined_feature_vector_length(self, small_pipeline):
        pipe, _, data = small_pipeline
        vec = combined_features(pipe.lstm_model, data[0][0])
        assert vec.shape == (61,)
        assert np.all(np.isfinite(vec))

    def test_classify_returns_label_and_simplex(self, small_pipeline):
        pipe, _, data = small_pipeline
        label, probs = classify(pipe, data[0][0])
        assert isinstance(label, EmotionLabel)
        assert abs(probs.as_array().sum() - 1.0) < 1e-12

    def test_training_accuracy_on_seen_data(self, small_pipeline):
        pipe, _, data = small_pipeline
        correct = sum(classify(pipe, g)[0] == label for g, label in data)
        assert correct / len(data) >= 0.9

    def test_loss_curve_length(self, small_pipeline):
        _, losses, _ = small_pipeline
        assert len(losses) == 30

    def test_save_load_identical_predictions(self, small_pipeline, tmp_path):
        pipe, _, data = small_pipeline
        save_pipeline(pipe, tmp_path / "model")
        back = load_pipeline(tmp_path / "model")
        for g, _ in data[:8]:
            l1, p1 = classify(pipe, g)
            l2, p2 = classify(back, g)
            assert l1 == l2
            assert np.array_equal(p1.as_array(), p2.as_array())

    def test_load_missing_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_pipeline(tmp_path / "nope")

    def test_prediction_row_format(self, small_pipeline):
        pipe, _, data = small_pipeline
        label, probs = classify(pipe, data[0][0])
        row = prediction_row("gid", label, probs)
        cells = row.split(",")
        assert cells[0] == "gid"
        assert cells[1] in ("happy", "angry", "sad", "neutral")
        assert len(cells) == 8

    def test_classify_unseen_synth(self, small_pipeline):
        pipe, _, _ = small_pipeline
        g = synth_gait(SynthParams(emotion=EmotionLabel.Sad, stride_scale=0.97, seed=999))
        label, _ = classify(pipe, g)
        assert label == EmotionLabel.Sad
