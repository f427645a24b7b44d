#!/usr/bin/env python3
"""The 29 affective features, compared across the four emotion presets.

Movement features (speeds, acceleration and jerk magnitudes of the hands,
head and feet, plus the walk-cycle time) capture arousal; posture features
(bounding-box volume, neck and shoulder angles, limb-to-root distances,
stride length, triangle areas) capture body expansion and head tilt.
"""

from emogait import EmotionLabel
from emogait.features import AFFECTIVE_FEATURE_NAMES, affective_features
from emogait.synth import SynthParams, synth_gait

vectors = {}
for emotion in EmotionLabel:
    gait = synth_gait(SynthParams(emotion=emotion, seed=7))
    vectors[emotion] = affective_features(gait).vector

header = f"{'feature':32s}" + "".join(f"{e.name:>10s}" for e in EmotionLabel)
print(header)
print("-" * len(header))
for i, name in enumerate(AFFECTIVE_FEATURE_NAMES):
    row = "".join(f"{vectors[e][i]:10.3f}" for e in EmotionLabel)
    print(f"{name:32s}{row}")

# The psychology-driven directions are visible directly in the numbers:
angry = vectors[EmotionLabel.Angry]
sad = vectors[EmotionLabel.Sad]
stride = AFFECTIVE_FEATURE_NAMES.index("stride_length")
speed = AFFECTIVE_FEATURE_NAMES.index("speed_rhand")
cycle = AFFECTIVE_FEATURE_NAMES.index("cycle_time")
print()
print(f"angry stride {angry[stride]:.2f} m vs sad {sad[stride]:.2f} m "
      "(long strides convey anger)")
print(f"angry hand speed {angry[speed]:.2f} m/s vs sad {sad[speed]:.2f} m/s "
      "(high arousal means rapid movement)")
print(f"angry cycle {angry[cycle]:.2f} s vs sad {sad[cycle]:.2f} s "
      "(slower gaits read as sad)")
assert angry[stride] > sad[stride] and angry[speed] > sad[speed]
