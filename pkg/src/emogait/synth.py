"""Procedural walk-cycle generator and emotion-labeled gait banks.

The walker is a stylized in-place gait: feet follow phase-warped cosine
curves so each cycle has one clean ground contact (lowest point, near-zero
horizontal speed), arms counter-swing the legs, and the pelvis carries a
small bob and sway. Emotion presets scale stride, cadence and arm swing and
pitch the head forward for sadness, in the directions reported for angry /
happy / sad / neutral walkers: long fast strides for anger, faster pace and
arm swing for happiness, slow collapsed motion and a dropped head for
sadness.

Generated corpora are class-separable by construction; per-gait parameter
jitter provides within-class variation without polluting the derivative
features the way per-frame coordinate noise would.
"""

from __future__ import annotations

import pathlib
from dataclasses import dataclass

import numpy as np

from .affect import EmotionLabel
from .perception import load_labels_csv
from .skeleton import Gait, JointId, N_JOINTS, load_gait, mean_foot_speed

FPS = 30.0
N_FRAMES = 90
BASE_CYCLE_S = 1.2
BASE_STRIDE = 0.62  # peak-to-peak fore-aft foot separation, meters
BASE_ARM_SWING = 0.24
FOOT_LIFT = 0.11
ANKLE_HEIGHT = 0.08
ROOT_HEIGHT = 0.95
BOB_AMP = 0.004
SWAY_AMP = 0.006
START_PHASE = 0.28

# Phase-warp strengths: horizontal foot motion dwells hard around the strike,
# foot height keeps a sharper minimum so the strike frame stays well-defined.
WARP_HORIZONTAL = 0.85
WARP_VERTICAL = 0.25


@dataclass(frozen=True)
class SynthParams:
    """Walker controls; scales multiply the emotion preset, tilt adds to it."""

    emotion: EmotionLabel
    stride_scale: float = 1.0
    speed_scale: float = 1.0
    arm_swing_amp: float = 1.0
    head_tilt: float = 0.0  # radians, forward pitch added to the preset
    noise_sigma: float = 0.0  # meters
    seed: int = 0

    def __post_init__(self):
        if self.stride_scale <= 0 or self.speed_scale <= 0 or self.arm_swing_amp <= 0:
            raise ValueError("scales must be > 0")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")


# preset = (stride multiplier, speed multiplier, arm-swing multiplier, head tilt rad)
EMOTION_PRESETS: dict[EmotionLabel, tuple[float, float, float, float]] = {
    EmotionLabel.Happy: (1.15, 1.15, 1.30, 0.0),
    EmotionLabel.Angry: (1.30, 1.25, 1.45, 0.08),
    EmotionLabel.Sad: (0.70, 0.70, 0.55, 0.349),  # ~20 degrees forward
    EmotionLabel.Neutral: (1.00, 1.00, 1.00, 0.0),
}


def _warp(u: np.ndarray, alpha: float) -> np.ndarray:
    """Phase warp with a dwell around u = 0 (mod 1)."""
    return 2.0 * np.pi * u - alpha * np.sin(2.0 * np.pi * u)


def synth_gait(p: SynthParams) -> Gait:
    """A 90-frame, 30 fps walker for the given parameters; deterministic."""
    preset_stride, preset_speed, preset_arm, preset_tilt = EMOTION_PRESETS[p.emotion]
    stride = BASE_STRIDE * preset_stride * p.stride_scale
    cycle_s = BASE_CYCLE_S / (preset_speed * p.speed_scale)
    arm = BASE_ARM_SWING * preset_arm * p.arm_swing_amp
    tilt = preset_tilt + p.head_tilt

    t = np.arange(N_FRAMES) / FPS
    u_left = (t / cycle_s + START_PHASE) % 1.0
    u_right = (u_left + 0.5) % 1.0

    def foot(u):
        z = 0.5 * stride * np.cos(_warp(u, WARP_HORIZONTAL))
        y = ANKLE_HEIGHT + 0.5 * FOOT_LIFT * (1.0 - np.cos(_warp(u, WARP_VERTICAL)))
        return y, z

    left_y, left_z = foot(u_left)
    right_y, right_z = foot(u_right)

    sway = SWAY_AMP * np.sin(2.0 * np.pi * u_left)
    bob = BOB_AMP * np.cos(4.0 * np.pi * u_left + 0.7)
    root_y = ROOT_HEIGHT + bob

    # arms counter-swing: the left hand leads when the right foot does
    lhand_z = arm * np.cos(2.0 * np.pi * u_right)
    rhand_z = arm * np.cos(2.0 * np.pi * u_left)

    head_y = 1.45 + 0.17 * np.cos(tilt) + bob
    head_z = 0.17 * np.sin(tilt)

    joints = np.zeros((N_FRAMES, N_JOINTS, 3))

    def put(joint, x, y, z):
        joints[:, joint, 0] = x
        joints[:, joint, 1] = y
        joints[:, joint, 2] = z

    put(JointId.Root, sway, root_y, 0.0)
    put(JointId.Spine, sway, 1.20 + bob, 0.0)
    put(JointId.Neck, sway, 1.45 + bob, 0.0)
    put(JointId.Head, sway, head_y, head_z)
    put(JointId.LShoulder, sway - 0.19, 1.40 + bob, 0.0)
    put(JointId.RShoulder, sway + 0.19, 1.40 + bob, 0.0)
    put(JointId.LElbow, sway - 0.24, 1.16 + bob, 0.45 * lhand_z)
    put(JointId.RElbow, sway + 0.24, 1.16 + bob, 0.45 * rhand_z)
    put(JointId.LHand, sway - 0.26, 0.94 + bob, lhand_z)
    put(JointId.RHand, sway + 0.26, 0.94 + bob, rhand_z)
    put(JointId.LHip, sway - 0.10, root_y - 0.07, 0.0)
    put(JointId.RHip, sway + 0.10, root_y - 0.07, 0.0)
    put(JointId.LKnee, sway - 0.11, 0.50 + 0.5 * (left_y - ANKLE_HEIGHT), 0.55 * left_z)
    put(JointId.RKnee, sway + 0.11, 0.50 + 0.5 * (right_y - ANKLE_HEIGHT), 0.55 * right_z)
    put(JointId.LFoot, -0.12, left_y, left_z)
    put(JointId.RFoot, 0.12, right_y, right_z)

    frames = joints.reshape(N_FRAMES, 3 * N_JOINTS)
    if p.noise_sigma > 0:
        rng = np.random.default_rng(p.seed)
        frames = frames + rng.normal(0.0, p.noise_sigma, size=frames.shape)
    gait_id = f"{p.emotion.name.lower()}_{p.seed}"
    return Gait(frames=frames, frame_rate=FPS, id=gait_id)


def generator_cycle_s(p: SynthParams) -> float:
    """The walker's true cycle period, for oracle checks."""
    preset_speed = EMOTION_PRESETS[p.emotion][1]
    return BASE_CYCLE_S / (preset_speed * p.speed_scale)


def synth_corpus(emotion: EmotionLabel, n: int, seed: int,
                 noise_sigma: float = 0.0) -> list[Gait]:
    """n walkers of one emotion with jittered parameters; deterministic."""
    rng = np.random.default_rng(seed)
    gaits = []
    for i in range(n):
        scales = rng.uniform(0.92, 1.08, size=3)
        tilt = float(rng.normal(0.0, 0.02))
        params = SynthParams(
            emotion=emotion,
            stride_scale=float(scales[0]),
            speed_scale=float(scales[1]),
            arm_swing_amp=float(scales[2]),
            head_tilt=tilt,
            noise_sigma=noise_sigma,
            seed=seed + i,
        )
        g = synth_gait(params)
        gaits.append(Gait(frames=g.frames, frame_rate=g.frame_rate,
                          id=f"{emotion.name.lower()}_{seed}_{i:03d}"))
    return gaits


# ---------------------------------------------------------------------------
# gait banks
# ---------------------------------------------------------------------------


class NoGaitForEmotionError(LookupError):
    """The bank holds no gait with the requested label."""


GaitBank = list  # list[(Gait, EmotionLabel)]


def load_bank(directory) -> GaitBank:
    """Read a labels.csv + gait-file directory (as written by the synth CLI)."""
    d = pathlib.Path(directory)
    labels = load_labels_csv(d / "labels.csv")
    bank = []
    for gait_id in sorted(labels):
        label = labels[gait_id]
        if label is None:
            continue
        for suffix in (".csv", ".json"):
            path = d / f"{gait_id}{suffix}"
            if path.exists():
                bank.append((load_gait(path), label))
                break
        else:
            raise FileNotFoundError(f"bank file for gait {gait_id!r} not found in {d}")
    return bank


def gait_bank_select(bank: GaitBank, emotion: EmotionLabel, criterion: str = "first",
                     seed: int | None = None, target_speed: float | None = None) -> Gait:
    """Pick one gait with the requested label.

    criterion: "first" (bank order), "random" (seeded), or "closest_speed"
    (minimal |mean foot speed - target_speed|).
    """
    matching = [g for g, label in bank if label == emotion]
    if not matching:
        raise NoGaitForEmotionError(f"bank has no gait labeled {emotion.name.lower()}")
    if criterion == "first":
        return matching[0]
    if criterion == "random":
        rng = np.random.default_rng(seed)
        return matching[int(rng.integers(0, len(matching)))]
    if criterion == "closest_speed":
        if target_speed is None:
            raise ValueError("closest_speed selection needs a target speed")
        return min(matching, key=lambda g: abs(mean_foot_speed(g) - target_speed))
    raise ValueError(f"unknown selection criterion {criterion!r}")
