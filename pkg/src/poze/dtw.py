"""Multivariate dynamic time warping over pose sequences.

One shared alignment per sequence pair: the DP runs on the full-body frame
cost (mean per-joint Euclidean distance) and per-joint distances are read
off the single optimal path afterwards. Everything is bit-deterministic:
frame costs accumulate per-joint in ascending joint order, path statistics
accumulate along the path from (0, 0), and backtracking breaks ties by
preferring the diagonal step, then (1, 0), then (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleBandError,
    NotNormalizedError,
    SkeletonMismatchError,
    ValidationError,
)
from .sequence import PoseSequence

FRAME_COSTS = ("mean-joint-euclidean",)


@dataclass(frozen=True)
class DtwConfig:
    """Alignment parameters: optional Sakoe-Chiba half-width and the frame cost."""

    band: int | None = None
    frame_cost: str = "mean-joint-euclidean"

    def __post_init__(self):
        if self.band is not None and (not isinstance(self.band, int) or self.band < 0):
            raise ValidationError(f"band must be a nonnegative integer or None, got {self.band!r}")
        if self.frame_cost not in FRAME_COSTS:
            raise ValidationError(f"frame_cost must be one of {FRAME_COSTS}, got {self.frame_cost!r}")

    def to_record(self) -> dict:
        return {"band": self.band, "frame_cost": self.frame_cost}

    @classmethod
    def from_record(cls, record: dict) -> "DtwConfig":
        band = record.get("band")
        return cls(band=None if band is None else int(band), frame_cost=record["frame_cost"])


@dataclass(frozen=True)
class AlignmentResult:
    """Optimal warping path, its total cost, and per-joint path-averaged distances."""

    path: tuple[tuple[int, int], ...]
    total_cost: float
    per_joint_distance: np.ndarray


def frame_cost(a: np.ndarray, b: np.ndarray) -> float:
    """Mean per-joint Euclidean distance between two (J, 3) poses."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise SkeletonMismatchError(f"pose shapes differ: {a.shape} vs {b.shape}")
    d = a - b
    d2 = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    d2 = d2 + d[:, 2] * d[:, 2]
    dist = np.sqrt(d2)
    s = 0.0
    for v in dist.tolist():
        s += v
    return s / a.shape[0]


def _joint_distance_tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-joint distances for every frame pair, shape (n_a, n_b, J)."""
    d = a[:, None, :, :] - b[None, :, :, :]
    d2 = d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1]
    d2 = d2 + d[..., 2] * d[..., 2]
    return np.sqrt(d2)


def _frame_cost_matrix(joint_dist: np.ndarray) -> np.ndarray:
    """Collapse (n_a, n_b, J) joint distances to the frame-cost matrix.

    Accumulates joints in ascending order so every cell is bit-identical to
    frame_cost() on the corresponding pose pair.
    """
    acc = joint_dist[:, :, 0].copy()
    for j in range(1, joint_dist.shape[2]):
        acc += joint_dist[:, :, j]
    return acc / joint_dist.shape[2]


def dtw_align(seq_a: PoseSequence, seq_b: PoseSequence,
              cfg: DtwConfig = DtwConfig()) -> AlignmentResult:
    """Optimal monotone alignment of two normalized sequences.

    total_cost is the minimum over all monotone paths (steps (1,0), (0,1),
    (1,1)) of the frame costs summed along the path; per_joint_distance[j]
    is the mean of joint j's Euclidean distance over the path steps.
    """
    if not seq_a.normalized or not seq_b.normalized:
        raise NotNormalizedError("dtw_align requires both sequences to be normalized")
    if seq_a.joint_count != seq_b.joint_count:
        raise SkeletonMismatchError(
            f"joint counts differ: {seq_a.joint_count} vs {seq_b.joint_count}"
        )
    n_a, n_b = seq_a.n_frames, seq_b.n_frames
    band = cfg.band
    if band is not None and band < abs(n_a - n_b):
        raise InfeasibleBandError(
            f"band {band} infeasible for lengths {n_a} and {n_b} (needs >= {abs(n_a - n_b)})"
        )

    joint_dist = _joint_distance_tensor(seq_a.frames, seq_b.frames)
    local = _frame_cost_matrix(joint_dist).tolist()

    inf = float("inf")
    cost = [[inf] * n_b for _ in range(n_a)]
    cost[0][0] = local[0][0]
    for i in range(n_a):
        lo = 0 if band is None else max(0, i - band)
        hi = n_b if band is None else min(n_b, i + band + 1)
        row = cost[i]
        loc = local[i]
        up = cost[i - 1] if i else None
        for j in range(lo, hi):
            if i == 0 and j == 0:
                continue
            best = inf
            if up is not None:
                if j:
                    best = up[j - 1]
                if up[j] < best:
                    best = up[j]
            if j and row[j - 1] < best:
                best = row[j - 1]
            row[j] = best + loc[j]

    total = cost[n_a - 1][n_b - 1]

    # Backtrack; tie preference: diagonal, then (1,0), then (0,1).
    path = [(n_a - 1, n_b - 1)]
    i, j = n_a - 1, n_b - 1
    while i or j:
        candidates = []
        if i and j:
            candidates.append((i - 1, j - 1))
        if i:
            candidates.append((i - 1, j))
        if j:
            candidates.append((i, j - 1))
        best = min(cost[pi][pj] for pi, pj in candidates)
        for pi, pj in candidates:
            if cost[pi][pj] == best:
                i, j = pi, pj
                break
        path.append((i, j))
    path.reverse()

    steps = joint_dist[tuple(np.array(path).T)]
    acc = steps[0].copy()
    for k in range(1, steps.shape[0]):
        acc += steps[k]
    per_joint = acc / steps.shape[0]

    return AlignmentResult(path=tuple(path), total_cost=total, per_joint_distance=per_joint)


def pairwise_joint_distances(seq_a: PoseSequence, seq_b: PoseSequence,
                             cfg: DtwConfig = DtwConfig()) -> np.ndarray:
    """Per-joint time-averaged distances along the optimal shared path."""
    return dtw_align(seq_a, seq_b, cfg).per_joint_distance
