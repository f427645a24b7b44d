"""Independent brute-force oracles used by the test suite.

Everything here is deliberately written with plain Python loops and the math
module (no numpy vectorization, no reuse of package internals) so that the
package implementation is checked against a second, independently coded path.
"""

from __future__ import annotations

import math

# joint indices, duplicated on purpose rather than imported
ROOT, SPINE, NECK, HEAD = 0, 1, 2, 3
LSHOULDER, RSHOULDER, LELBOW, RELBOW = 4, 5, 6, 7
LHAND, RHAND, LHIP, RHIP = 8, 9, 10, 11
LKNEE, RKNEE, LFOOT, RFOOT = 12, 13, 14, 15


def joint_xyz(pose, j):
    return (pose[3 * j], pose[3 * j + 1], pose[3 * j + 2])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a):
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def angle_at(vertex, a, b):
    r1 = sub(a, vertex)
    r2 = sub(b, vertex)
    n1 = norm(r1)
    n2 = norm(r2)
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    c = dot(r1, r2) / (n1 * n2)
    c = max(-1.0, min(1.0, c))
    return math.acos(c)


def triangle_area(a, b, c):
    return 0.5 * norm(cross(sub(a, c), sub(b, c)))


def normalize_root_frames(frames):
    """Per-frame subtraction of the root position, scalar loops."""
    out = []
    for pose in frames:
        rx, ry, rz = joint_xyz(pose, ROOT)
        row = []
        for j in range(16):
            x, y, z = joint_xyz(pose, j)
            row.extend([x - rx, y - ry, z - rz])
        out.append(row)
    return out


def posture_frame(pose):
    """[volume, 5 angles, 4 distances, 2 areas] of one 48-vector pose."""
    lo = [min(pose[3 * j + axis] for j in range(16)) for axis in range(3)]
    hi = [max(pose[3 * j + axis] for j in range(16)) for axis in range(3)]
    volume = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2])

    root = joint_xyz(pose, ROOT)
    neck = joint_xyz(pose, NECK)
    head = joint_xyz(pose, HEAD)
    spine = joint_xyz(pose, SPINE)
    lsh = joint_xyz(pose, LSHOULDER)
    rsh = joint_xyz(pose, RSHOULDER)
    lhand = joint_xyz(pose, LHAND)
    rhand = joint_xyz(pose, RHAND)
    lfoot = joint_xyz(pose, LFOOT)
    rfoot = joint_xyz(pose, RFOOT)

    up = (neck[0], neck[1] + 1.0, neck[2])
    angles = [
        angle_at(neck, lsh, rsh),
        angle_at(rsh, neck, lsh),
        angle_at(lsh, neck, rsh),
        angle_at(neck, up, spine),
        angle_at(neck, head, spine),
    ]
    distances = [
        norm(sub(rhand, root)),
        norm(sub(lhand, root)),
        norm(sub(rfoot, root)),
        norm(sub(lfoot, root)),
    ]
    areas = [triangle_area(lhand, rhand, neck), triangle_area(lfoot, rfoot, root)]
    return [volume] + angles + distances + areas


def foot_strikes(frames, fps, foot):
    """The strike rule, re-implemented with scalar loops."""
    n = len(frames)
    if n < 3:
        return []
    heights = [frames[t][3 * foot + 1] for t in range(n)]
    speed3d = []
    hspeed = []
    for t in range(1, n):
        a = joint_xyz(frames[t], foot)
        b = joint_xyz(frames[t - 1], foot)
        d = sub(a, b)
        speed3d.append(norm(d) * fps)
        hspeed.append(math.sqrt(d[0] * d[0] + d[2] * d[2]) * fps)
    mean_speed = sum(speed3d) / len(speed3d)
    hspeed = [hspeed[0]] + hspeed
    threshold = 0.1 * mean_speed

    strikes = []
    for t in range(n):
        lo = max(0, t - 2)
        hi = min(n - 1, t + 2)
        window = heights[lo : hi + 1]
        lowest = min(window)
        first_min = lo + window.index(lowest)
        if first_min == t and hspeed[t] < threshold:
            strikes.append(t)
    return strikes


def stride_window(frames, fps):
    """(start, end, cycle_time) per the first-stride rule, whole gait fallback."""
    pairs = []
    for foot in (LFOOT, RFOOT):
        strikes = foot_strikes(frames, fps, foot)
        if len(strikes) >= 2:
            pairs.append((strikes[0], strikes[1]))
    if not pairs:
        return 0, len(frames) - 1, len(frames) / fps
    start, end = min(pairs)
    return start, end, (end - start) / fps


def affective_features(frames, fps):
    """All 29 features of a gait, computed with loops on the raw rows."""
    frames = normalize_root_frames(frames)
    start, end, cycle_time = stride_window(frames, fps)

    movement_joints = [RHAND, LHAND, HEAD, RFOOT, LFOOT]
    speeds, accels, jerks = [], [], []
    for joint in movement_joints:
        pos = [joint_xyz(frames[t], joint) for t in range(start, end + 1)]
        d1 = [tuple((pos[k][i] - pos[k - 1][i]) * fps for i in range(3))
              for k in range(1, len(pos))]
        d2 = [tuple((d1[k][i] - d1[k - 1][i]) * fps for i in range(3))
              for k in range(1, len(d1))]
        d3 = [tuple((d2[k][i] - d2[k - 1][i]) * fps for i in range(3))
              for k in range(1, len(d2))]
        speeds.append(sum(norm(v) for v in d1) / len(d1))
        accels.append(sum(norm(v) for v in d2) / len(d2))
        jerks.append(sum(norm(v) for v in d3) / len(d3))
    movement = speeds + accels + jerks + [cycle_time]

    per_frame = [posture_frame(frames[t]) for t in range(start, end + 1)]
    mean12 = [sum(row[i] for row in per_frame) / len(per_frame) for i in range(12)]
    stride = max(
        norm(sub(joint_xyz(frames[t], LFOOT), joint_xyz(frames[t], RFOOT)))
        for t in range(start, end + 1)
    )
    posture = mean12[:10] + [stride] + mean12[10:]
    return movement + posture


def exhaustive_tree_accuracy(X, y, max_depth=5):
    """Training accuracy of a greedy Gini tree searching every feature and
    threshold (the no-subsampling, no-bootstrap reference)."""

    def gini(labels):
        n = len(labels)
        impurity = 1.0
        for cls in set(labels):
            p = labels.count(cls) / n
            impurity -= p * p
        return impurity

    def majority(labels):
        return max(sorted(set(labels)), key=labels.count)

    def build(rows, labels, depth):
        if depth >= max_depth or len(labels) < 2 or gini(labels) == 0.0:
            return ("leaf", majority(labels))
        best = None
        n = len(labels)
        for f in range(len(rows[0])):
            values = sorted(set(r[f] for r in rows))
            for lo_v, hi_v in zip(values, values[1:]):
                threshold = 0.5 * (lo_v + hi_v)
                left = [labels[i] for i in range(n) if rows[i][f] <= threshold]
                right = [labels[i] for i in range(n) if rows[i][f] > threshold]
                score = (len(left) * gini(left) + len(right) * gini(right)) / n
                cand = (score, f, threshold)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return ("leaf", majority(labels))
        _, f, threshold = best
        left_idx = [i for i in range(n) if rows[i][f] <= threshold]
        right_idx = [i for i in range(n) if rows[i][f] > threshold]
        return (
            "split",
            f,
            threshold,
            build([rows[i] for i in left_idx], [labels[i] for i in left_idx], depth + 1),
            build([rows[i] for i in right_idx], [labels[i] for i in right_idx], depth + 1),
        )

    def predict(node, row):
        while node[0] == "split":
            _, f, threshold, left, right = node
            node = left if row[f] <= threshold else right
        return node[1]

    rows = [list(map(float, r)) for r in X]
    labels = [int(v) for v in y]
    tree = build(rows, labels, 0)
    correct = sum(predict(tree, rows[i]) == labels[i] for i in range(len(labels)))
    return correct / len(labels)


def student_t_two_sided_p(t, df):
    """Two-sided p-value by Simpson integration of the t density."""

    def pdf(x):
        log_c = (math.lgamma((df + 1) / 2.0) - math.lgamma(df / 2.0)
                 - 0.5 * math.log(df * math.pi))
        return math.exp(log_c - ((df + 1) / 2.0) * math.log1p(x * x / df))

    a = abs(t)
    b = a + 400.0  # the tail beyond is negligible at any realistic df
    n = 200_001  # odd number of Simpson points
    h = (b - a) / (n - 1)
    total = pdf(a) + pdf(b)
    for k in range(1, n - 1):
        total += pdf(a + k * h) * (4.0 if k % 2 == 1 else 2.0)
    return 2.0 * total * h / 3.0


def jacobi_eigh(matrix, sweeps=100, tol=1e-14):
    """Eigenvalues/vectors of a symmetric matrix by cyclic Jacobi rotations.

    Returns (values, vectors) with vectors as columns, unsorted.
    """
    n = len(matrix)
    a = [row[:] for row in matrix]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for _ in range(sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) < 1e-300:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    values = [a[i][i] for i in range(n)]
    return values, v
