"""Emotion labels, class probabilities, and the valence/arousal mapping.

Valence and arousal are linear in the happy/angry/sad probabilities; the
neutral probability corresponds to the origin of the affect space and
contributes to neither axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class EmotionLabel(IntEnum):
    Happy = 0
    Angry = 1
    Sad = 2
    Neutral = 3


EMOTION_NAMES = [e.name.lower() for e in EmotionLabel]

# Affect-axis coefficients over (p_happy, p_angry, p_sad).
VALENCE_WEIGHTS = np.array([0.67, -0.04, -0.74])
AROUSAL_WEIGHTS = np.array([-0.35, 0.86, -0.37])


def parse_emotion(name: str) -> EmotionLabel:
    try:
        return EmotionLabel[name.strip().capitalize()]
    except KeyError:
        raise ValueError(f"unknown emotion {name!r}; expected one of {EMOTION_NAMES}") from None


@dataclass(frozen=True)
class ClassProbabilities:
    p_happy: float
    p_angry: float
    p_sad: float
    p_neutral: float

    def __post_init__(self):
        arr = self.as_array()
        if (arr < -1e-12).any() or (arr > 1 + 1e-12).any():
            raise ValueError(f"probabilities out of [0, 1]: {arr}")
        if abs(arr.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {arr.sum()}, not 1")

    @classmethod
    def from_array(cls, arr) -> "ClassProbabilities":
        a = np.asarray(arr, dtype=np.float64)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.p_happy, self.p_angry, self.p_sad, self.p_neutral])

    def argmax_label(self) -> EmotionLabel:
        """Most probable class; ties go to the earlier class in enum order."""
        return EmotionLabel(int(np.argmax(self.as_array())))


@dataclass(frozen=True)
class Affect:
    """Continuous affect coordinates.

    Over the probability simplex, valence lies in [-0.74, 0.67] and arousal
    in [-0.37, 0.86] (the coefficient extrema).
    """

    valence: float
    arousal: float


def valence_arousal(p: ClassProbabilities) -> Affect:
    """valence = 0.67 p(h) - 0.04 p(a) - 0.74 p(s);
    arousal = -0.35 p(h) + 0.86 p(a) - 0.37 p(s)."""
    pv = p.as_array()[:3]
    return Affect(valence=float(VALENCE_WEIGHTS @ pv), arousal=float(AROUSAL_WEIGHTS @ pv))
