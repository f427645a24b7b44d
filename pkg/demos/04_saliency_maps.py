#!/usr/bin/env python3
"""Saliency maps: which joints the trained network looks at, frame by frame.

The activation of a joint is the magnitude of the loss gradient with respect
to that joint's input coordinates, scaled into [0, 1]. Hands, feet and the
head carry the arm-swing, stride and head-jerk signal, so they light up; a
high-arousal walker (angry) produces stronger activations than a low-arousal
one (sad). Writes saliency_maps.png next to this script when matplotlib is
available.
"""

import pathlib

import numpy as np

from emogait import EmotionLabel, TrainConfig
from emogait.lstm import saliency
from emogait.pipeline import train_pipeline
from emogait.skeleton import JOINT_NAMES, JointId
from emogait.synth import SynthParams, synth_corpus, synth_gait

train_set = []
for emotion in EmotionLabel:
    for g in synth_corpus(emotion, 15, seed=800 + int(emotion)):
        train_set.append((g, emotion))
print(f"training on {len(train_set)} gaits ...")
pipe, _ = train_pipeline(
    train_set, TrainConfig(epochs=60, lr_schedule={0: 0.01, 40: 0.003}, rng_seed=11)
)

maps = {}
for emotion in (EmotionLabel.Angry, EmotionLabel.Happy, EmotionLabel.Sad):
    gait = synth_gait(SynthParams(emotion=emotion, seed=321))
    maps[emotion] = saliency(pipe.lstm_model, gait)

focus = [JointId.RHand, JointId.LHand, JointId.Head, JointId.RFoot, JointId.LFoot]
rest = [j for j in JointId if j not in focus]
print()
print(f"{'emotion':9s}{'hands+feet+head':>17s}{'other joints':>14s}{'overall':>9s}")
for emotion, act in maps.items():
    print(f"{emotion.name:9s}{act[:, focus].mean():17.4f}"
          f"{act[:, rest].mean():14.4f}{act.mean():9.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the heatmap figure")
else:
    fig, axes = plt.subplots(1, 3, figsize=(15, 4), sharey=True)
    for ax, (emotion, act) in zip(axes, maps.items()):
        image = ax.imshow(act.T, aspect="auto", cmap="hot", vmin=0,
                          vmax=max(m.max() for m in maps.values()))
        ax.set_title(emotion.name)
        ax.set_xlabel("frame")
    axes[0].set_yticks(range(16), JOINT_NAMES, fontsize=7)
    fig.colorbar(image, ax=axes, label="activation")
    out = pathlib.Path(__file__).parent / "saliency_maps.png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
