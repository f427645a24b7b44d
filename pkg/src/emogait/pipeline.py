"""The combined emotion classifier: LSTM deep features + affective features
into the random forest, plus model-directory persistence and prediction CSV.
"""

from __future__ import annotations

import pathlib
from dataclasses import dataclass

import numpy as np

from . import features, forest as forest_mod, lstm
from .affect import Affect, ClassProbabilities, EmotionLabel, valence_arousal
from .skeleton import Gait

FEATURE_DIM = 32 + 29  # deep ++ affective

LSTM_FILE = "lstm.json"
FOREST_FILE = "forest.json"
LOSS_CURVE_FILE = "loss_curve.csv"


@dataclass
class EmotionPipeline:
    lstm_model: lstm.LstmModel
    forest: forest_mod.RandomForest


def combined_features(model: lstm.LstmModel, g: Gait) -> np.ndarray:
    """Raw 61-vector: 32 deep features followed by 29 affective features."""
    deep = lstm.deep_features(model, g).vector
    affective = features.affective_features(g).vector
    return np.concatenate([deep, affective])


def train_pipeline(data, cfg: lstm.TrainConfig):
    """Train the LSTM, then the forest on normalized combined features.

    `data` is a list of (Gait, EmotionLabel) pairs. Returns
    (EmotionPipeline, per-epoch LSTM loss curve).
    """
    model, losses = lstm.train(data, cfg)
    X = np.stack([combined_features(model, g) for g, _ in data])
    y = np.array([int(label) for _, label in data])
    stats = forest_mod.fit_normalizer(X)
    X_norm = forest_mod.apply_normalizer(stats, X)
    rf = forest_mod.fit_forest(X_norm, y, seed=cfg.rng_seed, stats=stats)
    return EmotionPipeline(lstm_model=model, forest=rf), losses


def classify(pipeline: EmotionPipeline, g: Gait) -> tuple[EmotionLabel, ClassProbabilities]:
    """Predict the perceived emotion of one gait.

    Ties in the probability vector resolve to the earlier class in
    (happy, angry, sad, neutral) order.
    """
    if pipeline.forest.stats is None:
        raise ValueError("pipeline forest carries no normalization stats")
    raw = combined_features(pipeline.lstm_model, g)
    v = forest_mod.apply_normalizer(pipeline.forest.stats, raw)
    probs = forest_mod.predict_proba(pipeline.forest, v)
    return probs.argmax_label(), probs


def predict_affect(probs: ClassProbabilities) -> Affect:
    return valence_arousal(probs)


def save_pipeline(pipeline: EmotionPipeline, directory) -> None:
    d = pathlib.Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    lstm.save_model(pipeline.lstm_model, d / LSTM_FILE)
    forest_mod.save_forest(pipeline.forest, d / FOREST_FILE)


def load_pipeline(directory) -> EmotionPipeline:
    d = pathlib.Path(directory)
    for name in (LSTM_FILE, FOREST_FILE):
        if not (d / name).exists():
            raise FileNotFoundError(f"model directory {d} is missing {name}")
    return EmotionPipeline(
        lstm_model=lstm.load_model(d / LSTM_FILE),
        forest=forest_mod.load_forest(d / FOREST_FILE),
    )


def save_loss_curve(losses, path) -> None:
    lines = ["epoch,loss"] + [f"{i},{float(v)!r}" for i, v in enumerate(losses)]
    pathlib.Path(path).write_text("\n".join(lines) + "\n")


PREDICTIONS_HEADER = "gait_id,label,p_happy,p_angry,p_sad,p_neutral,valence,arousal"


def prediction_row(gait_id: str, label: EmotionLabel, probs: ClassProbabilities) -> str:
    affect = valence_arousal(probs)
    values = [probs.p_happy, probs.p_angry, probs.p_sad, probs.p_neutral,
              affect.valence, affect.arousal]
    return ",".join([gait_id, label.name.lower()] + [repr(float(v)) for v in values])
