import sys
import pathlib

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from emogait.skeleton import Gait, JointId, N_JOINTS, POSE_DIM


def make_gait(frames, fps=30.0, gait_id="") -> Gait:
    return Gait(frames=np.asarray(frames, dtype=np.float64), frame_rate=fps, id=gait_id)


def t_pose() -> np.ndarray:
    """A fixed standing pose with arms out; geometry is easy to hand-check."""
    joints = np.zeros((N_JOINTS, 3))
    joints[JointId.Root] = (0.0, 1.0, 0.0)
    joints[JointId.Spine] = (0.0, 1.25, 0.0)
    joints[JointId.Neck] = (0.0, 1.5, 0.0)
    joints[JointId.Head] = (0.0, 1.7, 0.05)
    joints[JointId.LShoulder] = (-0.2, 1.45, 0.0)
    joints[JointId.RShoulder] = (0.2, 1.45, 0.0)
    joints[JointId.LElbow] = (-0.45, 1.45, 0.0)
    joints[JointId.RElbow] = (0.45, 1.45, 0.0)
    joints[JointId.LHand] = (-0.7, 1.45, 0.02)
    joints[JointId.RHand] = (0.7, 1.45, 0.02)
    joints[JointId.LHip] = (-0.1, 0.95, 0.0)
    joints[JointId.RHip] = (0.1, 0.95, 0.0)
    joints[JointId.LKnee] = (-0.11, 0.5, 0.01)
    joints[JointId.RKnee] = (0.11, 0.5, 0.01)
    joints[JointId.LFoot] = (-0.12, 0.08, 0.03)
    joints[JointId.RFoot] = (0.12, 0.08, -0.03)
    return joints.reshape(POSE_DIM)


def random_walk_gait(rng, n_frames=20, fps=30.0, scale=0.02, gait_id="") -> Gait:
    """A smooth-ish random gait: random base pose plus a cumulative walk."""
    base = t_pose()
    steps = rng.normal(0.0, scale, size=(n_frames, POSE_DIM))
    frames = base + np.cumsum(steps, axis=0)
    return make_gait(frames, fps=fps, gait_id=gait_id)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)
