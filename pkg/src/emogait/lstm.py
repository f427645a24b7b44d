"""Vanilla LSTM over pose sequences, implemented in plain numpy.

One recurrent layer (hidden size 32 by default) with input/forget/output
gates and a tanh candidate, a linear 4-class head trained with cross-entropy,
Adam updates with decoupled weight decay, exact backpropagation through time,
and input-gradient saliency maps.

Gaits are root-normalized, linearly resampled to a fixed sequence length so
they can be mini-batched, and min-max scaled into [0, 1] with a single
scalar range fitted on the training corpus (stored with the model).
"""

from __future__ import annotations

import json
import pathlib
from dataclasses import dataclass, field

import numpy as np

from .skeleton import Gait, POSE_DIM, normalize_root, resample

HIDDEN_SIZE = 32
SEQ_LEN = 48
N_CLASSES = 4

GATES = ("i", "f", "o", "c")

ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


class EmptyDatasetError(ValueError):
    """Training requires at least one labeled gait."""


@dataclass
class TrainConfig:
    batch_size: int = 8
    epochs: int = 500
    lr_schedule: dict[int, float] = field(
        default_factory=lambda: {0: 0.1, 250: 0.01, 375: 0.001, 438: 0.0001}
    )
    beta1: float = 0.9
    weight_decay: float = 5e-4
    rng_seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if any(lr <= 0 for lr in self.lr_schedule.values()):
            raise ValueError("learning rates must be > 0")

    def learning_rate(self, epoch: int) -> float:
        applicable = [e for e in self.lr_schedule if e <= epoch]
        if not applicable:
            raise ValueError(f"lr_schedule has no entry applicable to epoch {epoch}")
        return self.lr_schedule[max(applicable)]

    @classmethod
    def from_dict(cls, obj: dict) -> "TrainConfig":
        kwargs = dict(obj)
        if "lr_schedule" in kwargs:
            kwargs["lr_schedule"] = {int(k): float(v) for k, v in kwargs["lr_schedule"].items()}
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "batch_size": self.batch_size,
            "epochs": self.epochs,
            "lr_schedule": {str(k): v for k, v in self.lr_schedule.items()},
            "beta1": self.beta1,
            "weight_decay": self.weight_decay,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class LstmState:
    h: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class DeepFeatures:
    """Hidden state at the last time step of the trained network."""

    vector: np.ndarray


@dataclass
class LstmModel:
    hidden: int
    seq_len: int
    params: dict[str, np.ndarray]
    input_min: float = 0.0
    input_max: float = 1.0

    @property
    def input_dim(self) -> int:
        return self.params["W_i"].shape[1]


def zero_state(hidden: int) -> LstmState:
    return LstmState(h=np.zeros(hidden), c=np.zeros(hidden))


def init_params(hidden: int, input_dim: int, n_classes: int, rng) -> dict[str, np.ndarray]:
    """Uniform(-1/sqrt(H), 1/sqrt(H)) weights, zero biases, forget bias 1."""
    bound = 1.0 / np.sqrt(hidden)
    params = {}
    for gate in GATES:
        params[f"W_{gate}"] = rng.uniform(-bound, bound, size=(hidden, input_dim))
        params[f"U_{gate}"] = rng.uniform(-bound, bound, size=(hidden, hidden))
        params[f"b_{gate}"] = np.zeros(hidden)
    params["b_f"] = np.ones(hidden)
    params["W_out"] = rng.uniform(-bound, bound, size=(n_classes, hidden))
    params["b_out"] = np.zeros(n_classes)
    return params


def zero_params(hidden: int = HIDDEN_SIZE, input_dim: int = POSE_DIM,
                n_classes: int = N_CLASSES) -> dict[str, np.ndarray]:
    params = {}
    for gate in GATES:
        params[f"W_{gate}"] = np.zeros((hidden, input_dim))
        params[f"U_{gate}"] = np.zeros((hidden, hidden))
        params[f"b_{gate}"] = np.zeros(hidden)
    params["W_out"] = np.zeros((n_classes, hidden))
    params["b_out"] = np.zeros(n_classes)
    return params


def _sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def lstm_step(params: dict[str, np.ndarray], x: np.ndarray, state: LstmState) -> LstmState:
    """One recurrence step.

    i, f, o = sigmoid(W x + U h + b);  c = f*c_prev + i*tanh(W_c x + U_c h + b_c);
    h = o * tanh(c).
    """
    h_prev, c_prev = state.h, state.c
    i = _sigmoid(params["W_i"] @ x + params["U_i"] @ h_prev + params["b_i"])
    f = _sigmoid(params["W_f"] @ x + params["U_f"] @ h_prev + params["b_f"])
    o = _sigmoid(params["W_o"] @ x + params["U_o"] @ h_prev + params["b_o"])
    g = np.tanh(params["W_c"] @ x + params["U_c"] @ h_prev + params["b_c"])
    c = f * c_prev + i * g
    return LstmState(h=o * np.tanh(c), c=c)


def _forward_batch(params: dict[str, np.ndarray], xs: np.ndarray):
    """Run the recurrence over xs of shape (T, B, D); returns (h_T, cache)."""
    T, B, _ = xs.shape
    hidden = params["b_i"].shape[0]
    h = np.zeros((B, hidden))
    c = np.zeros((B, hidden))
    steps = []
    for t in range(T):
        x = xs[t]
        i = _sigmoid(x @ params["W_i"].T + h @ params["U_i"].T + params["b_i"])
        f = _sigmoid(x @ params["W_f"].T + h @ params["U_f"].T + params["b_f"])
        o = _sigmoid(x @ params["W_o"].T + h @ params["U_o"].T + params["b_o"])
        g = np.tanh(x @ params["W_c"].T + h @ params["U_c"].T + params["b_c"])
        c_new = f * c + i * g
        tc = np.tanh(c_new)
        steps.append({"x": x, "h_prev": h, "c_prev": c, "i": i, "f": f, "o": o,
                      "g": g, "tc": tc})
        h = o * tc
        c = c_new
    return h, steps


def _backward_batch(params, steps, dh_last):
    """Backpropagate through time; returns (grads, dxs (T, B, D))."""
    grads = {k: np.zeros_like(v) for k, v in params.items() if k not in ("W_out", "b_out")}
    T = len(steps)
    B, _ = dh_last.shape
    dh = dh_last
    dc = np.zeros_like(dh_last)
    dxs = np.empty((T, B, params["W_i"].shape[1]))
    for t in range(T - 1, -1, -1):
        s = steps[t]
        i, f, o, g, tc = s["i"], s["f"], s["o"], s["g"], s["tc"]
        do = dh * tc
        da_o = do * o * (1.0 - o)
        dc = dc + dh * o * (1.0 - tc * tc)
        df = dc * s["c_prev"]
        da_f = df * f * (1.0 - f)
        di = dc * g
        da_i = di * i * (1.0 - i)
        dg = dc * i
        da_c = dg * (1.0 - g * g)

        x, h_prev = s["x"], s["h_prev"]
        for gate, da in (("i", da_i), ("f", da_f), ("o", da_o), ("c", da_c)):
            grads[f"W_{gate}"] += da.T @ x
            grads[f"U_{gate}"] += da.T @ h_prev
            grads[f"b_{gate}"] += da.sum(axis=0)
        dxs[t] = (da_i @ params["W_i"] + da_f @ params["W_f"]
                  + da_o @ params["W_o"] + da_c @ params["W_c"])
        dh = (da_i @ params["U_i"] + da_f @ params["U_f"]
              + da_o @ params["U_o"] + da_c @ params["U_c"])
        dc = dc * f
    return grads, dxs


def preprocess_gait(model: LstmModel, g: Gait) -> np.ndarray:
    """Root-normalize, resample to the model's sequence length and scale to [0, 1]."""
    g = normalize_root(g)
    frames = resample(g, model.seq_len).frames
    return scale_frames(frames, model.input_min, model.input_max)


def scale_frames(frames: np.ndarray, lo: float, hi: float) -> np.ndarray:
    if hi <= lo:
        return np.zeros_like(frames)
    return np.clip((frames - lo) / (hi - lo), 0.0, 1.0)


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def cross_entropy(logits: np.ndarray, label: int) -> float:
    """-log softmax(logits)[label], stabilized by max subtraction."""
    z = logits - logits.max()
    return float(np.log(np.exp(z).sum()) - z[label])


def forward(model: LstmModel, g: Gait):
    """Logits, 32-dim deep features, and the cache needed for backprop."""
    xs = preprocess_gait(model, g)[:, None, :]  # (T, 1, D)
    h_last, steps = _forward_batch(model.params, xs)
    logits = (h_last @ model.params["W_out"].T + model.params["b_out"])[0]
    cache = {"xs": xs, "steps": steps, "h_last": h_last}
    return logits, DeepFeatures(vector=h_last[0].copy()), cache


def deep_features(model: LstmModel, g: Gait) -> DeepFeatures:
    return forward(model, g)[1]


def _batch_loss_and_grads(params, xs, labels):
    """Mean cross-entropy over a batch (T, B, D) and its exact gradients."""
    B = xs.shape[1]
    h_last, steps = _forward_batch(params, xs)
    logits = h_last @ params["W_out"].T + params["b_out"]  # (B, n_classes)
    probs = softmax(logits)
    loss = float(np.mean([cross_entropy(logits[b], labels[b]) for b in range(B)]))
    dlogits = probs.copy()
    dlogits[np.arange(B), labels] -= 1.0
    dlogits /= B
    grads = {"W_out": dlogits.T @ h_last, "b_out": dlogits.sum(axis=0)}
    dh_last = dlogits @ params["W_out"]
    rec_grads, dxs = _backward_batch(params, steps, dh_last)
    grads.update(rec_grads)
    return loss, grads, dxs


def backprop(model: LstmModel, batch):
    """Exact gradients of the mean batch loss for every parameter.

    `batch` is a list of (Gait, label) pairs.
    """
    if not batch:
        raise EmptyDatasetError("backprop needs a non-empty batch")
    xs = np.stack([preprocess_gait(model, g) for g, _ in batch], axis=1)  # (T, B, D)
    labels = np.array([int(lbl) for _, lbl in batch])
    _, grads, _ = _batch_loss_and_grads(model.params, xs, labels)
    return grads


def train(data, cfg: TrainConfig, hidden: int = HIDDEN_SIZE, seq_len: int = SEQ_LEN):
    """Train on labeled gaits; returns (model, per-epoch mean loss curve).

    Adam (beta1 from cfg, beta2 0.999, eps 1e-8) with decoupled weight decay
    on the weight matrices and the stepwise learning-rate schedule.
    Deterministic for a fixed cfg.rng_seed.
    """
    if not data:
        raise EmptyDatasetError("training needs at least one labeled gait")
    rng = np.random.default_rng(cfg.rng_seed)

    resampled = np.stack(
        [resample(normalize_root(g), seq_len).frames for g, _ in data]
    )  # (N, T, D)
    labels = np.array([int(lbl) for _, lbl in data])
    lo = float(resampled.min())
    hi = float(resampled.max())
    inputs = scale_frames(resampled, lo, hi)

    params = init_params(hidden, POSE_DIM, N_CLASSES, rng)
    model = LstmModel(hidden=hidden, seq_len=seq_len, params=params,
                      input_min=lo, input_max=hi)

    m = {k: np.zeros_like(v) for k, v in params.items()}
    v = {k: np.zeros_like(v) for k, v in params.items()}
    step = 0
    n = len(data)
    losses = []
    for epoch in range(cfg.epochs):
        lr = cfg.learning_rate(epoch)
        perm = rng.permutation(n)
        epoch_losses = []
        for lo_idx in range(0, n, cfg.batch_size):
            idx = perm[lo_idx : lo_idx + cfg.batch_size]
            xs = inputs[idx].transpose(1, 0, 2)  # (T, B, D)
            loss, grads, _ = _batch_loss_and_grads(params, xs, labels[idx])
            epoch_losses.append(loss)
            step += 1
            bc1 = 1.0 - cfg.beta1**step
            bc2 = 1.0 - ADAM_BETA2**step
            for key, grad in grads.items():
                m[key] = cfg.beta1 * m[key] + (1.0 - cfg.beta1) * grad
                v[key] = ADAM_BETA2 * v[key] + (1.0 - ADAM_BETA2) * grad * grad
                update = (m[key] / bc1) / (np.sqrt(v[key] / bc2) + ADAM_EPS)
                params[key] -= lr * update
                if not key.startswith("b"):
                    params[key] -= lr * cfg.weight_decay * params[key]
        losses.append(float(np.mean(epoch_losses)))
    return model, losses


def saliency(model: LstmModel, g: Gait) -> np.ndarray:
    """Per-frame, per-joint loss-gradient magnitudes, scaled into [0, 1].

    The loss is the cross-entropy of the predicted class; the gradient is
    taken with respect to the network inputs. Each joint's activation is the
    Euclidean norm of its 3 coordinate gradients; the map is resampled to the
    gait's frame count and divided by its maximum when that exceeds 1.
    """
    xs = preprocess_gait(model, g)[:, None, :]
    h_last, steps = _forward_batch(model.params, xs)
    logits = (h_last @ model.params["W_out"].T + model.params["b_out"])[0]
    predicted = int(np.argmax(logits))
    dlogits = softmax(logits[None, :])
    dlogits[0, predicted] -= 1.0
    dh_last = dlogits @ model.params["W_out"]
    _, dxs = _backward_batch(model.params, steps, dh_last)

    grad = dxs[:, 0, :]  # (seq_len, 48)
    per_joint = np.linalg.norm(grad.reshape(model.seq_len, -1, 3), axis=2)

    n = g.n_frames
    old_t = np.linspace(0.0, 1.0, model.seq_len)
    new_t = np.linspace(0.0, 1.0, n)
    activations = np.empty((n, per_joint.shape[1]))
    for j in range(per_joint.shape[1]):
        activations[:, j] = np.interp(new_t, old_t, per_joint[:, j])

    peak = activations.max()
    if peak > 1.0:
        activations = activations / peak
    return activations


# ---------------------------------------------------------------------------
# model files: JSON, full float precision
# ---------------------------------------------------------------------------


def model_to_dict(model: LstmModel) -> dict:
    return {
        "h": model.hidden,
        "seq_len": model.seq_len,
        "params": {
            gate: {
                "W": model.params[f"W_{gate}"].tolist(),
                "U": model.params[f"U_{gate}"].tolist(),
                "b": model.params[f"b_{gate}"].tolist(),
            }
            for gate in GATES
        },
        "head": {"W": model.params["W_out"].tolist(), "b": model.params["b_out"].tolist()},
        "input_scale": {"min": model.input_min, "max": model.input_max},
    }


def model_from_dict(obj: dict) -> LstmModel:
    params = {}
    for gate in GATES:
        entry = obj["params"][gate]
        params[f"W_{gate}"] = np.array(entry["W"], dtype=np.float64)
        params[f"U_{gate}"] = np.array(entry["U"], dtype=np.float64)
        params[f"b_{gate}"] = np.array(entry["b"], dtype=np.float64)
    params["W_out"] = np.array(obj["head"]["W"], dtype=np.float64)
    params["b_out"] = np.array(obj["head"]["b"], dtype=np.float64)
    return LstmModel(
        hidden=int(obj["h"]),
        seq_len=int(obj["seq_len"]),
        params=params,
        input_min=float(obj["input_scale"]["min"]),
        input_max=float(obj["input_scale"]["max"]),
    )


def save_model(model: LstmModel, path) -> None:
    pathlib.Path(path).write_text(json.dumps(model_to_dict(model)))


def load_model(path) -> LstmModel:
    return model_from_dict(json.loads(pathlib.Path(path).read_text()))
