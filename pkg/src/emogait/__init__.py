"""Gait-based perceived-emotion analysis.

Turns 16-joint 3D pose sequences into hand-crafted affective features and
LSTM deep features, classifies them into happy / angry / sad / neutral with
a random forest, and maps class probabilities to continuous valence and
arousal. Includes the perception-study aggregation math and a procedural
walker for building labeled synthetic corpora.
"""

from .affect import (
    Affect,
    ClassProbabilities,
    EmotionLabel,
    valence_arousal,
)
from .features import (
    AFFECTIVE_FEATURE_NAMES,
    AffectiveFeatures,
    MovementFeatures,
    PostureFeatures,
    affective_features,
    movement_features,
    posture_features,
    posture_features_frame,
    stride_length,
)
from .forest import (
    NormalizationStats,
    RandomForest,
    apply_normalizer,
    fit_forest,
    fit_normalizer,
    predict_proba,
)
from .lstm import (
    DeepFeatures,
    LstmModel,
    LstmState,
    TrainConfig,
    backprop,
    cross_entropy,
    forward,
    lstm_step,
    saliency,
    train,
)
from .perception import (
    EmotionRatings,
    ResponseMatrix,
    assign_label,
    gender_ttest,
    mean_responses,
    pca,
    response_correlation,
)
from .pipeline import EmotionPipeline, classify, load_pipeline, save_pipeline, train_pipeline
from .skeleton import (
    FewerThanTwoStrikesError,
    Gait,
    GaitParseError,
    JointId,
    WalkCycle,
    detect_foot_strikes,
    extract_walk_cycle,
    load_gait,
    normalize_root,
    parse_gait,
    save_gait,
)
from .synth import EMOTION_PRESETS, SynthParams, gait_bank_select, synth_corpus, synth_gait

__version__ = "0.1.0"
