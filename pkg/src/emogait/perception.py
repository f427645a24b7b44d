"""Perception-study aggregation: rating means, label assignment, response
correlations, the gender t-test, and PCA for the affect axes.

Participants rate each gait on four 5-point items (happy / angry / sad /
neutral). A gait gets a label when exactly one emotion's mean rating exceeds
the threshold; otherwise it stays unlabeled and is skipped for training.
"""

from __future__ import annotations

import csv
import json
import pathlib
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .affect import EMOTION_NAMES, EmotionLabel

LABEL_THRESHOLD = 3.5


@dataclass(frozen=True)
class ParticipantResponse:
    participant_id: str
    ratings: np.ndarray  # (4,) ints in 1..5, ordered happy/angry/sad/neutral
    gender: str = ""

    def __post_init__(self):
        r = np.asarray(self.ratings, dtype=np.int64)
        if r.shape != (4,):
            raise ValueError("a response holds 4 ratings")
        if ((r < 1) | (r > 5)).any():
            raise ValueError(f"ratings must be integers in [1, 5], got {r}")
        object.__setattr__(self, "ratings", r)


@dataclass
class ResponseMatrix:
    """Per-gait participant responses, in stable gait order."""

    gait_ids: list[str] = field(default_factory=list)
    responses: dict[str, list[ParticipantResponse]] = field(default_factory=dict)

    def add(self, gait_id: str, response: ParticipantResponse) -> None:
        if gait_id not in self.responses:
            self.gait_ids.append(gait_id)
            self.responses[gait_id] = []
        self.responses[gait_id].append(response)

    def validate(self) -> None:
        for gid in self.gait_ids:
            if not self.responses.get(gid):
                raise ValueError(f"gait {gid!r} has no responses")


@dataclass
class EmotionRatings:
    """Mean rating per gait and emotion, plus assigned labels (None = unlabeled)."""

    gait_ids: list[str]
    means: np.ndarray  # (n_gaits, 4)
    labels: list[EmotionLabel | None] | None = None


def load_ratings_csv(path) -> ResponseMatrix:
    """Read `gait_id,participant_id,gender,happy,angry,sad,neutral` rows."""
    matrix = ResponseMatrix()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = ["gait_id", "participant_id", "gender"] + EMOTION_NAMES
        if header != expected:
            raise ValueError(f"{path}: expected header {','.join(expected)}")
        for i, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 7:
                raise ValueError(f"{path}, line {i}: expected 7 fields, got {len(row)}")
            try:
                ratings = [int(c) for c in row[3:]]
            except ValueError:
                raise ValueError(f"{path}, line {i}: non-integer rating") from None
            matrix.add(row[0], ParticipantResponse(row[1], np.array(ratings), gender=row[2]))
    matrix.validate()
    return matrix


def filter_constant_raters(matrix: ResponseMatrix) -> ResponseMatrix:
    """Drop participants whose ratings never vary (low-quality responders)."""
    by_participant: dict[str, list[int]] = {}
    for gid in matrix.gait_ids:
        for resp in matrix.responses[gid]:
            by_participant.setdefault(resp.participant_id, []).extend(resp.ratings.tolist())
    constant = {pid for pid, vals in by_participant.items() if len(set(vals)) == 1}
    filtered = ResponseMatrix()
    for gid in matrix.gait_ids:
        for resp in matrix.responses[gid]:
            if resp.participant_id not in constant:
                filtered.add(gid, resp)
    return filtered


def mean_responses(matrix: ResponseMatrix) -> EmotionRatings:
    """Mean of all participant responses, per gait and emotion."""
    matrix.validate()
    means = np.empty((len(matrix.gait_ids), 4))
    for i, gid in enumerate(matrix.gait_ids):
        stacked = np.stack([r.ratings for r in matrix.responses[gid]])
        means[i] = stacked.mean(axis=0)
    return EmotionRatings(gait_ids=list(matrix.gait_ids), means=means)


def assign_label(means, threshold: float = LABEL_THRESHOLD) -> EmotionLabel | None:
    """The unique emotion whose mean rating strictly exceeds the threshold.

    Returns None (unlabeled) when zero or several emotions exceed it.
    """
    means = np.asarray(means, dtype=np.float64)
    above = np.nonzero(means > threshold)[0]
    if len(above) != 1:
        return None
    return EmotionLabel(int(above[0]))


def label_ratings(ratings: EmotionRatings, threshold: float = LABEL_THRESHOLD) -> EmotionRatings:
    labels = [assign_label(ratings.means[i], threshold) for i in range(len(ratings.gait_ids))]
    return EmotionRatings(gait_ids=ratings.gait_ids, means=ratings.means, labels=labels)


@dataclass(frozen=True)
class CorrelationResult:
    matrix: np.ndarray  # (4, 4), symmetric, unit diagonal
    constant_columns: np.ndarray  # (4,) bool; correlations against these are 0


def response_correlation(matrix: ResponseMatrix) -> CorrelationResult:
    """Pearson correlation of per-gait mean ratings between emotion pairs.

    A constant column cannot be correlated; its off-diagonal entries are
    reported as 0 and the column is flagged.
    """
    ratings = mean_responses(matrix)
    if len(ratings.gait_ids) < 2:
        raise ValueError("correlation needs at least 2 gaits")
    x = ratings.means - ratings.means.mean(axis=0)
    norms = np.sqrt((x * x).sum(axis=0))
    constant = norms == 0.0
    corr = np.eye(4)
    for a in range(4):
        for b in range(a + 1, 4):
            if constant[a] or constant[b]:
                value = 0.0
            else:
                value = float((x[:, a] @ x[:, b]) / (norms[a] * norms[b]))
            corr[a, b] = corr[b, a] = value
    return CorrelationResult(matrix=corr, constant_columns=constant)


def gender_ttest(group_a, group_b) -> tuple[float, float]:
    """Welch's two-sample t statistic and two-sided p-value.

    The p-value comes from the Student-t CDF, evaluated through the
    regularized incomplete beta function.
    """
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("each group needs at least 2 values")
    var_a = a.var(ddof=1)
    var_b = b.var(ddof=1)
    if var_a == 0.0 and var_b == 0.0:
        if a.mean() == b.mean():
            return 0.0, 1.0
        raise ValueError("both groups have zero variance")
    sa = var_a / len(a)
    sb = var_b / len(b)
    t = (a.mean() - b.mean()) / np.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa**2 / (len(a) - 1) + sb**2 / (len(b) - 1))
    # two-sided p through the incomplete-beta form of the t CDF
    p = float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    return float(t), p


def pca(X) -> tuple[np.ndarray, np.ndarray]:
    """Principal components of the rows of X.

    Mean-centered covariance eigendecomposition. Returns (components, ratios)
    with components as rows sorted by descending eigenvalue, each flipped so
    its largest-magnitude entry is positive; ratios are nonnegative and sum
    to 1 for non-degenerate data.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("pca needs at least 2 rows")
    centered = X - X.mean(axis=0)
    cov = centered.T @ centered / (X.shape[0] - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    components = eigvecs[:, order].T
    for i in range(components.shape[0]):
        pivot = int(np.argmax(np.abs(components[i])))
        if components[i, pivot] < 0:
            components[i] = -components[i]
    total = eigvals.sum()
    ratios = eigvals / total if total > 0 else np.zeros_like(eigvals)
    return components, ratios


# ---------------------------------------------------------------------------
# report files
# ---------------------------------------------------------------------------


def write_labels_csv(path, ratings: EmotionRatings) -> None:
    lines = ["gait_id,label"]
    labels = ratings.labels or [None] * len(ratings.gait_ids)
    for gid, label in zip(ratings.gait_ids, labels):
        lines.append(f"{gid},{label.name.lower() if label is not None else 'unlabeled'}")
    pathlib.Path(path).write_text("\n".join(lines) + "\n")


def load_labels_csv(path) -> dict[str, EmotionLabel | None]:
    lines = pathlib.Path(path).read_text().splitlines()
    if not lines or lines[0] != "gait_id,label":
        raise ValueError(f"{path}: expected header 'gait_id,label'")
    labels: dict[str, EmotionLabel | None] = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        gid, _, name = line.partition(",")
        if name == "unlabeled":
            labels[gid] = None
        else:
            labels[gid] = EmotionLabel[name.strip().capitalize()]
    return labels


def write_correlation_csv(path, result: CorrelationResult) -> None:
    lines = ["emotion," + ",".join(EMOTION_NAMES)]
    for i, name in enumerate(EMOTION_NAMES):
        lines.append(name + "," + ",".join(repr(float(v)) for v in result.matrix[i]))
    pathlib.Path(path).write_text("\n".join(lines) + "\n")


def write_pca_json(path, columns, components: np.ndarray, ratios: np.ndarray) -> None:
    pathlib.Path(path).write_text(
        json.dumps(
            {
                "columns": list(columns),
                "components": components.tolist(),
                "explained_variance_ratios": ratios.tolist(),
            }
        )
    )
