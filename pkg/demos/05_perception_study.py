#!/usr/bin/env python3
"""Perception-study math on a synthetic ratings table: per-gait mean ratings,
threshold labeling, response correlations, a gender t-test, and the PCA that
derives valence/arousal axes from the happy/angry/sad rating columns."""

import numpy as np

from emogait.perception import (
    ParticipantResponse,
    ResponseMatrix,
    gender_ttest,
    label_ratings,
    mean_responses,
    pca,
    response_correlation,
)

# Simulate raters watching 40 gait clips and answering four 5-point items
# ("the walk looks happy / angry / sad / neutral"). Raters agree with a hidden
# per-gait truth plus personal noise, and happy/sad answers oppose each other.
rng = np.random.default_rng(2024)
matrix = ResponseMatrix()
genders = {}
for i in range(40):
    truth = i % 4
    for j in range(8):
        pid = f"p{j:02d}"
        genders[pid] = "f" if j < 4 else "m"
        base = np.array([2.2, 2.0, 2.1, 2.4])
        base[truth] += 2.3
        if truth == 0:
            base[2] -= 0.9  # a happy walk rarely reads as sad
        if truth == 2:
            base[0] -= 0.9
        noisy = np.clip(np.rint(base + rng.normal(0, 0.55, 4)), 1, 5).astype(int)
        matrix.add(f"clip{i:02d}", ParticipantResponse(pid, noisy, gender=genders[pid]))

ratings = label_ratings(mean_responses(matrix), threshold=3.5)
counts = {}
for label in ratings.labels:
    key = label.name if label is not None else "unlabeled"
    counts[key] = counts.get(key, 0) + 1
print("label counts (threshold 3.5):", counts)

correlation = response_correlation(matrix)
print("\nresponse correlation (happy/angry/sad/neutral):")
for row in correlation.matrix:
    print("  " + "  ".join(f"{v:+.3f}" for v in row))
print("happy and sad anti-correlate:", correlation.matrix[0, 2] < -0.3)

# Do female and male raters answer differently? Compare their happy ratings.
female = [float(r.ratings[0]) for gid in matrix.gait_ids
          for r in matrix.responses[gid] if r.gender == "f"]
male = [float(r.ratings[0]) for gid in matrix.gait_ids
        for r in matrix.responses[gid] if r.gender == "m"]
t, p = gender_ttest(female, male)
print(f"\ngender t-test on happy ratings: t = {t:.3f}, p = {p:.3f} "
      f"({'no significant difference' if p > 0.05 else 'significant difference'})")

# PCA on the happy/angry/sad mean-rating columns recovers two affect axes:
# the first contrasts happy against sad (valence), the second is dominated by
# anger (arousal).
components, ratios = pca(ratings.means[:, :3])
print("\naffect-axis PCA on [happy, angry, sad] means:")
for k in range(3):
    terms = ", ".join(f"{c:+.2f} {n}" for c, n in zip(components[k], ("happy", "angry", "sad")))
    print(f"  component {k + 1}: {terms}   ({ratios[k]:.1%} of variance)")
print(f"top two components explain {ratios[0] + ratios[1]:.1%} of the rating variance")
