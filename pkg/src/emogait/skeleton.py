"""Skeleton data model: 16-joint poses, gait sequences, file I/O, and
walk-cycle detection.

Conventions used everywhere in this package:

* a pose is 48 numbers: 16 joints x (x, y, z), joint-major, in meters;
* Y is up, the ground plane is XZ;
* time is in seconds, frame rates in frames/second.
"""

from __future__ import annotations

import json
import pathlib
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

N_JOINTS = 16
POSE_DIM = 3 * N_JOINTS


class JointId(IntEnum):
    """Canonical joint indices (Human3.6M-style reduced skeleton)."""

    Root = 0
    Spine = 1
    Neck = 2
    Head = 3
    LShoulder = 4
    RShoulder = 5
    LElbow = 6
    RElbow = 7
    LHand = 8
    RHand = 9
    LHip = 10
    RHip = 11
    LKnee = 12
    RKnee = 13
    LFoot = 14
    RFoot = 15


JOINT_NAMES = [j.name for j in JointId]

# Column names of a gait CSV, in canonical order: Root_x, Root_y, ... RFoot_z.
COORD_COLUMNS = [f"{name}_{axis}" for name in JOINT_NAMES for axis in "xyz"]

# Fraction of the mean 3D foot speed below which the foot counts as planted.
FOOT_STRIKE_SPEED_FRACTION = 0.1
# Half-width, in frames, of the window used for the height local-minimum test.
FOOT_STRIKE_WINDOW = 2


class GaitParseError(ValueError):
    """Raised when a gait file is malformed; the message names the location."""


class FewerThanTwoStrikesError(RuntimeError):
    """Raised when a gait has no pair of consecutive same-foot strikes.

    Callers that compute features fall back to the whole-gait window
    [0, n_frames - 1] with a cycle time of n_frames / frame_rate.
    """


@dataclass(frozen=True)
class Gait:
    """An immutable walking sequence: (n_frames, 48) joint positions."""

    frames: np.ndarray
    frame_rate: float
    id: str = ""

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 2 or frames.shape[1] != POSE_DIM:
            raise ValueError(f"gait frames must be (n, {POSE_DIM}), got {frames.shape}")
        if frames.shape[0] < 2:
            raise ValueError("a gait needs at least 2 frames")
        if not np.isfinite(frames).all():
            raise ValueError("gait contains non-finite coordinates")
        if not (self.frame_rate > 0):
            raise ValueError(f"frame_rate must be > 0, got {self.frame_rate}")
        frames = frames.copy()
        frames.flags.writeable = False
        object.__setattr__(self, "frames", frames)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def duration_s(self) -> float:
        return self.n_frames / self.frame_rate

    def joint(self, joint: JointId) -> np.ndarray:
        """(n_frames, 3) trajectory of one joint."""
        return self.frames[:, 3 * joint : 3 * joint + 3]

    def pose(self, t: int) -> np.ndarray:
        """The 48-vector at frame t."""
        return self.frames[t]


@dataclass(frozen=True)
class WalkCycle:
    """One stride: the interval between consecutive same-foot strikes."""

    start_frame: int
    end_frame: int
    duration_s: float

    def __post_init__(self):
        if not (0 <= self.start_frame < self.end_frame):
            raise ValueError("walk cycle needs start_frame < end_frame")


def pose_joint(pose: np.ndarray, joint: JointId) -> np.ndarray:
    """The (3,) position of one joint inside a 48-vector pose."""
    return np.asarray(pose)[3 * joint : 3 * joint + 3]


# ---------------------------------------------------------------------------
# parsing / serialization
#
# CSV layout:  line 1  "fps,<float>"
#              line 2  "t,<joint>_x,<joint>_y,<joint>_z,..."  (any joint order)
#              then one row per frame: frame index followed by 48 floats.
# JSON layout: {"id": str, "fps": number, "frames": [[48 numbers], ...]}
# ---------------------------------------------------------------------------


def parse_gait_csv(text: str, gait_id: str = "") -> Gait:
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if len(lines) < 3:
        raise GaitParseError("file too short: need header, column line and >= 2 frames")

    header = [c.strip() for c in lines[0].split(",")]
    if len(header) != 2 or header[0] != "fps":
        raise GaitParseError(f"line 1: malformed header {lines[0]!r}, expected 'fps,<float>'")
    try:
        fps = float(header[1])
    except ValueError:
        raise GaitParseError(f"line 1: non-numeric frame rate {header[1]!r}") from None
    if fps <= 0:
        raise GaitParseError(f"line 1: frame_rate must be > 0, got {fps}")

    columns = [c.strip() for c in lines[1].split(",")]
    if len(columns) != 1 + POSE_DIM:
        raise GaitParseError(
            f"line 2: expected {POSE_DIM} coordinates plus 't', got {len(columns) - 1} coordinates"
        )
    if columns[0] != "t":
        raise GaitParseError(f"line 2: first column must be 't', got {columns[0]!r}")
    try:
        # remap whatever column order the file uses to canonical order
        order = [columns.index(name, 1) for name in COORD_COLUMNS]
    except ValueError:
        missing = sorted(set(COORD_COLUMNS) - set(columns[1:]))
        raise GaitParseError(f"line 2: missing coordinate columns {missing[:3]}") from None

    rows = []
    for i, line in enumerate(lines[2:], start=3):
        cells = line.split(",")
        if len(cells) != 1 + POSE_DIM:
            raise GaitParseError(
                f"line {i}: expected {POSE_DIM} coordinates, got {len(cells) - 1}"
            )
        values = np.empty(1 + POSE_DIM)
        for j, cell in enumerate(cells):
            try:
                values[j] = float(cell)
            except ValueError:
                raise GaitParseError(
                    f"line {i}, column {columns[j] if j < len(columns) else j}: "
                    f"non-numeric cell {cell.strip()!r}"
                ) from None
        rows.append(values[order])

    return Gait(frames=np.array(rows), frame_rate=fps, id=gait_id)


def serialize_gait_csv(g: Gait) -> str:
    lines = [f"fps,{float(g.frame_rate)!r}", "t," + ",".join(COORD_COLUMNS)]
    for t in range(g.n_frames):
        lines.append(str(t) + "," + ",".join(repr(float(v)) for v in g.frames[t]))
    return "\n".join(lines) + "\n"


def parse_gait_json(text: str) -> Gait:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GaitParseError(f"invalid JSON: {e}") from None
    for key in ("fps", "frames"):
        if key not in obj:
            raise GaitParseError(f"missing {key!r} field")
    frames = obj["frames"]
    for i, row in enumerate(frames):
        if len(row) != POSE_DIM:
            raise GaitParseError(f"frame {i}: expected {POSE_DIM} coordinates, got {len(row)}")
    if not (isinstance(obj["fps"], (int, float)) and obj["fps"] > 0):
        raise GaitParseError(f"frame_rate must be > 0, got {obj['fps']}")
    return Gait(frames=np.array(frames, dtype=np.float64), frame_rate=float(obj["fps"]),
                id=str(obj.get("id", "")))


def serialize_gait_json(g: Gait) -> str:
    return json.dumps(
        {"id": g.id, "fps": float(g.frame_rate), "frames": [[float(v) for v in row] for row in g.frames]}
    )


def parse_gait(data: bytes | str, format: str, gait_id: str = "") -> Gait:
    """Parse a gait from CSV or JSON bytes/text."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if format == "csv":
        return parse_gait_csv(text, gait_id=gait_id)
    if format == "json":
        return parse_gait_json(text)
    raise ValueError(f"unknown gait format {format!r}")


def load_gait(path) -> Gait:
    p = pathlib.Path(path)
    fmt = "json" if p.suffix.lower() == ".json" else "csv"
    g = parse_gait(p.read_text(), fmt, gait_id=p.stem)
    if fmt == "json" and not g.id:
        g = Gait(frames=g.frames, frame_rate=g.frame_rate, id=p.stem)
    return g


def save_gait(g: Gait, path) -> None:
    p = pathlib.Path(path)
    text = serialize_gait_json(g) if p.suffix.lower() == ".json" else serialize_gait_csv(g)
    p.write_text(text)


# ---------------------------------------------------------------------------
# geometric operations
# ---------------------------------------------------------------------------


def normalize_root(g: Gait) -> Gait:
    """Translate every frame so the root joint sits at the origin."""
    root = g.joint(JointId.Root)  # (n, 3)
    frames = g.frames.reshape(g.n_frames, N_JOINTS, 3) - root[:, None, :]
    return Gait(frames=frames.reshape(g.n_frames, POSE_DIM), frame_rate=g.frame_rate, id=g.id)


def translate(g: Gait, offset) -> Gait:
    """Rigidly translate every joint of every frame by a 3-vector."""
    off = np.tile(np.asarray(offset, dtype=np.float64), N_JOINTS)
    return Gait(frames=g.frames + off, frame_rate=g.frame_rate, id=g.id)


def resample(g: Gait, n_frames: int) -> Gait:
    """Linearly resample a gait to a fixed frame count.

    The first and last frames are preserved; the frame rate is rescaled so
    the clip keeps its duration.
    """
    if n_frames < 2:
        raise ValueError("resample target must be >= 2 frames")
    old_t = np.arange(g.n_frames)
    new_t = np.linspace(0.0, g.n_frames - 1, n_frames)
    frames = np.empty((n_frames, POSE_DIM))
    for d in range(POSE_DIM):
        frames[:, d] = np.interp(new_t, old_t, g.frames[:, d])
    rate = g.frame_rate * (n_frames - 1) / (g.n_frames - 1)
    return Gait(frames=frames, frame_rate=rate, id=g.id)


def mean_foot_speed(g: Gait) -> float:
    """Mean 3D speed of both feet, from backward differences."""
    speeds = []
    for foot in (JointId.LFoot, JointId.RFoot):
        d = np.diff(g.joint(foot), axis=0)
        speeds.append(np.linalg.norm(d, axis=1) * g.frame_rate)
    return float(np.mean(np.concatenate(speeds)))


def detect_foot_strikes(g: Gait, foot: JointId) -> list[int]:
    """Frames where the given foot strikes the ground.

    A strike is a frame whose foot height is the (earliest) minimum within a
    +/-2-frame window while the foot's horizontal speed is below 10% of its
    mean 3D speed over the gait. Frame 0 has no backward difference and
    inherits the first defined one.
    """
    if foot not in (JointId.LFoot, JointId.RFoot):
        raise ValueError(f"{foot.name} is not a foot joint")
    if g.n_frames < 3:
        return []

    pos = g.joint(foot)
    height = pos[:, 1]
    diffs = np.diff(pos, axis=0)
    speed3d = np.linalg.norm(diffs, axis=1) * g.frame_rate
    horiz = np.linalg.norm(diffs[:, [0, 2]], axis=1) * g.frame_rate
    horiz = np.concatenate([[horiz[0]], horiz])
    threshold = FOOT_STRIKE_SPEED_FRACTION * float(speed3d.mean())

    strikes = []
    n = g.n_frames
    for t in range(n):
        lo = max(0, t - FOOT_STRIKE_WINDOW)
        hi = min(n - 1, t + FOOT_STRIKE_WINDOW)
        window = height[lo : hi + 1]
        if lo + int(np.argmin(window)) == t and horiz[t] < threshold:
            strikes.append(t)
    return strikes


def extract_walk_cycle(g: Gait) -> WalkCycle:
    """The first stride: consecutive strikes of the foot that strikes first."""
    pairs = []
    for foot in (JointId.LFoot, JointId.RFoot):
        strikes = detect_foot_strikes(g, foot)
        if len(strikes) >= 2:
            pairs.append((strikes[0], strikes[1]))
    if not pairs:
        raise FewerThanTwoStrikesError(
            "no foot has two strikes; use the whole gait as the stride window"
        )
    start, end = min(pairs)
    return WalkCycle(start_frame=start, end_frame=end, duration_s=(end - start) / g.frame_rate)


def whole_gait_window(g: Gait) -> tuple[int, int, float]:
    """Fallback stride window when no walk cycle is detectable."""
    return 0, g.n_frames - 1, g.n_frames / g.frame_rate
