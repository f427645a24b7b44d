"""Hand-crafted affective gait features.

29 features per gait: 16 movement features (speed / acceleration / jerk
magnitudes of hands, head and feet, plus the walk-cycle time) followed by
13 posture features (bounding-box volume, five angles at the neck and
shoulders, four joint-to-root distances, stride length, two triangle areas).

All per-frame quantities are averaged over a single stride window; when no
stride can be detected the whole clip is used as the window.
"""

from __future__ import annotations

import pathlib
import warnings
from dataclasses import dataclass

import numpy as np

from .skeleton import (
    FewerThanTwoStrikesError,
    Gait,
    JointId,
    WalkCycle,
    extract_walk_cycle,
    normalize_root,
    pose_joint,
    whole_gait_window,
)

# Joints whose kinematics carry most of the arousal signal.
MOVEMENT_JOINTS = (JointId.RHand, JointId.LHand, JointId.Head, JointId.RFoot, JointId.LFoot)

_MOVEMENT_JOINT_TAGS = ("rhand", "lhand", "head", "rfoot", "lfoot")

MOVEMENT_FEATURE_NAMES = (
    [f"speed_{j}" for j in _MOVEMENT_JOINT_TAGS]
    + [f"accel_{j}" for j in _MOVEMENT_JOINT_TAGS]
    + [f"jerk_{j}" for j in _MOVEMENT_JOINT_TAGS]
    + ["cycle_time"]
)

POSTURE_FEATURE_NAMES = [
    "volume",
    "angle_neck_shoulders",
    "angle_rshoulder_neck_lshoulder",
    "angle_lshoulder_neck_rshoulder",
    "angle_neck_vertical_back",
    "angle_neck_head_back",
    "dist_rhand_root",
    "dist_lhand_root",
    "dist_rfoot_root",
    "dist_lfoot_root",
    "stride_length",
    "area_hands_neck",
    "area_feet_root",
]

# Frozen 29-feature order: movement block then posture block.
AFFECTIVE_FEATURE_NAMES = MOVEMENT_FEATURE_NAMES + POSTURE_FEATURE_NAMES


class DegenerateAngleWarning(UserWarning):
    """A joint angle had a zero-length ray (coincident joints); value set to 0."""


class WindowTooShortError(ValueError):
    """Movement features need at least 4 frames in the stride window."""


@dataclass(frozen=True)
class PostureFeatures:
    volume: float
    angles: np.ndarray  # (5,) radians, in the POSTURE_FEATURE_NAMES order
    distances: np.ndarray  # (4,) meters
    stride_length: float
    areas: np.ndarray  # (2,) square meters
    degenerate: bool = False

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate(
            [[self.volume], self.angles, self.distances, [self.stride_length], self.areas]
        )


@dataclass(frozen=True)
class MovementFeatures:
    speeds: np.ndarray  # (5,) m/s
    accelerations: np.ndarray  # (5,) m/s^2
    jerks: np.ndarray  # (5,) m/s^3
    cycle_time: float

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.speeds, self.accelerations, self.jerks, [self.cycle_time]])


@dataclass(frozen=True)
class AffectiveFeatures:
    """The combined 29-vector, movement(16) then posture(13)."""

    vector: np.ndarray
    gait_id: str = ""

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.float64)
        if v.shape != (29,):
            raise ValueError(f"affective feature vector must have 29 entries, got {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("affective features contain non-finite values")
        object.__setattr__(self, "vector", v)

    @property
    def movement(self) -> np.ndarray:
        return self.vector[:16]

    @property
    def posture(self) -> np.ndarray:
        return self.vector[16:]


def _angle_between(vertex, a, b) -> tuple[float, bool]:
    """Unsigned angle at `vertex` between rays vertex->a and vertex->b."""
    r1 = a - vertex
    r2 = b - vertex
    n1 = np.linalg.norm(r1)
    n2 = np.linalg.norm(r2)
    if n1 == 0.0 or n2 == 0.0:
        return 0.0, True
    c = float(np.dot(r1, r2) / (n1 * n2))
    return float(np.arccos(np.clip(c, -1.0, 1.0))), False


def _triangle_area(a, b, c) -> float:
    return 0.5 * float(np.linalg.norm(np.cross(a - c, b - c)))


def posture_features_frame(pose: np.ndarray) -> np.ndarray:
    """12 posture features of one pose: [volume, 5 angles, 4 distances, 2 areas].

    Degenerate angles (a zero-length ray from coincident joints) are set to 0
    and reported with a DegenerateAngleWarning.
    """
    vec, degenerate = _posture_frame(np.asarray(pose, dtype=np.float64))
    if degenerate:
        warnings.warn("pose has coincident joints; angle set to 0", DegenerateAngleWarning,
                      stacklevel=2)
    return vec


def _posture_frame(pose: np.ndarray) -> tuple[np.ndarray, bool]:
    pts = pose.reshape(16, 3)
    volume = float(np.prod(pts.max(axis=0) - pts.min(axis=0)))

    root = pose_joint(pose, JointId.Root)
    neck = pose_joint(pose, JointId.Neck)
    head = pose_joint(pose, JointId.Head)
    spine = pose_joint(pose, JointId.Spine)
    lshoulder = pose_joint(pose, JointId.LShoulder)
    rshoulder = pose_joint(pose, JointId.RShoulder)
    lhand = pose_joint(pose, JointId.LHand)
    rhand = pose_joint(pose, JointId.RHand)
    lfoot = pose_joint(pose, JointId.LFoot)
    rfoot = pose_joint(pose, JointId.RFoot)

    # "back" is the ray neck->spine, "vertical" is +Y anchored at the neck
    vertical = neck + np.array([0.0, 1.0, 0.0])
    angle_defs = [
        (neck, lshoulder, rshoulder),
        (rshoulder, neck, lshoulder),
        (lshoulder, neck, rshoulder),
        (neck, vertical, spine),
        (neck, head, spine),
    ]
    angles = np.empty(5)
    degenerate = False
    for i, (v, a, b) in enumerate(angle_defs):
        angles[i], bad = _angle_between(v, a, b)
        degenerate = degenerate or bad

    distances = np.array(
        [
            np.linalg.norm(rhand - root),
            np.linalg.norm(lhand - root),
            np.linalg.norm(rfoot - root),
            np.linalg.norm(lfoot - root),
        ]
    )
    areas = np.array(
        [_triangle_area(lhand, rhand, neck), _triangle_area(lfoot, rfoot, root)]
    )
    return np.concatenate([[volume], angles, distances, areas]), degenerate


def stride_length(g: Gait, cycle: WalkCycle | None = None) -> float:
    """Maximum distance between the two feet, over the cycle window if given."""
    lfoot = g.joint(JointId.LFoot)
    rfoot = g.joint(JointId.RFoot)
    if cycle is not None:
        lfoot = lfoot[cycle.start_frame : cycle.end_frame + 1]
        rfoot = rfoot[cycle.start_frame : cycle.end_frame + 1]
    return float(np.linalg.norm(lfoot - rfoot, axis=1).max())


def posture_features(g: Gait, cycle: WalkCycle) -> PostureFeatures:
    """Per-frame posture features averaged over the stride window."""
    return _posture_over_window(g, cycle.start_frame, cycle.end_frame)


def _posture_over_window(g: Gait, start: int, end: int) -> PostureFeatures:
    per_frame = np.empty((end - start + 1, 12))
    degenerate = False
    for k, t in enumerate(range(start, end + 1)):
        per_frame[k], bad = _posture_frame(g.frames[t])
        degenerate = degenerate or bad
    if degenerate:
        warnings.warn("gait has coincident joints; some angles set to 0",
                      DegenerateAngleWarning, stacklevel=3)
    mean = per_frame.mean(axis=0)
    stride = stride_length(g, WalkCycle(start, end, (end - start) / g.frame_rate))
    return PostureFeatures(
        volume=float(mean[0]),
        angles=mean[1:6],
        distances=mean[6:10],
        stride_length=stride,
        areas=mean[10:12],
        degenerate=degenerate,
    )


def movement_features(g: Gait, cycle: WalkCycle) -> MovementFeatures:
    """Backward-difference kinematics averaged over the stride window.

    The k-th derivative is undefined on the first k frames of the window, so
    those frames are excluded from the k-th average.
    """
    return _movement_over_window(g, cycle.start_frame, cycle.end_frame, cycle.duration_s)


def _movement_over_window(g: Gait, start: int, end: int, cycle_time: float) -> MovementFeatures:
    n = end - start + 1
    if n < 4:
        raise WindowTooShortError(
            f"movement features need >= 4 frames in the window, got {n}"
        )
    fps = g.frame_rate
    speeds = np.empty(5)
    accels = np.empty(5)
    jerks = np.empty(5)
    for i, joint in enumerate(MOVEMENT_JOINTS):
        pos = g.joint(joint)[start : end + 1]
        d1 = np.diff(pos, axis=0) * fps
        d2 = np.diff(d1, axis=0) * fps
        d3 = np.diff(d2, axis=0) * fps
        speeds[i] = np.linalg.norm(d1, axis=1).mean()
        accels[i] = np.linalg.norm(d2, axis=1).mean()
        jerks[i] = np.linalg.norm(d3, axis=1).mean()
    return MovementFeatures(speeds=speeds, accelerations=accels, jerks=jerks,
                            cycle_time=cycle_time)


def affective_features(g: Gait) -> AffectiveFeatures:
    """The full 29-vector for a gait.

    Root-normalizes, picks the first walk cycle (whole clip if none), and
    concatenates movement(16) with posture(13).
    """
    g = normalize_root(g)
    try:
        cycle = extract_walk_cycle(g)
        start, end, cycle_time = cycle.start_frame, cycle.end_frame, cycle.duration_s
    except FewerThanTwoStrikesError:
        start, end, cycle_time = whole_gait_window(g)
    movement = _movement_over_window(g, start, end, cycle_time)
    posture = _posture_over_window(g, start, end)
    return AffectiveFeatures(
        vector=np.concatenate([movement.vector, posture.vector]), gait_id=g.id
    )


def write_features_csv(path, rows) -> None:
    """Write `(gait_id, 29-vector)` rows as CSV with the frozen header."""
    lines = ["gait_id," + ",".join(AFFECTIVE_FEATURE_NAMES)]
    for gait_id, vector in rows:
        lines.append(str(gait_id) + "," + ",".join(repr(float(v)) for v in vector))
    pathlib.Path(path).write_text("\n".join(lines) + "\n")


def read_features_csv(path):
    """Read rows written by write_features_csv back as `(gait_id, vector)`."""
    lines = pathlib.Path(path).read_text().splitlines()
    expected = "gait_id," + ",".join(AFFECTIVE_FEATURE_NAMES)
    if not lines or lines[0] != expected:
        raise ValueError(f"{path}: not an affective-features CSV")
    rows = []
    for line in lines[1:]:
        if not line.strip():
            continue
        cells = line.split(",")
        rows.append((cells[0], np.array([float(c) for c in cells[1:]])))
    return rows
