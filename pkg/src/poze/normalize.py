"""Pose normalization: root-centering, scale removal, optional heading alignment.

Conventions fixed here: the vertical axis is +z, so heading lives in the xy
plane; the heading reference is the right-hip -> left-hip vector of the first
frame, rotated onto +x. The per-sequence scale is the median over frames of
the per-frame scale statistic, so a single glitched frame cannot distort it,
and motion amplitude over time is preserved (one scale per sequence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AlreadyNormalizedError,
    DegenerateSkeletonError,
    ValidationError,
)
from .sequence import PoseSequence
from .skeleton import default_skeleton, validate_edge_tree

SCALE_MODES = ("mean-bone-length", "torso-length", "none")

#: below this, the scale statistic (or heading vector) is an estimator failure
EPS_SCALE = 1e-9


def _default_edges() -> tuple[tuple[int, int], ...]:
    return default_skeleton().edges


@dataclass(frozen=True)
class NormalizationConfig:
    """How to remove translation, body size, and (optionally) facing direction."""

    root_joint: int = 0
    scale_mode: str = "mean-bone-length"
    align_heading: bool = False
    skeleton_edges: tuple[tuple[int, int], ...] = field(default_factory=_default_edges)
    torso_joints: tuple[int, int] = (0, 8)

    def __post_init__(self):
        if self.scale_mode not in SCALE_MODES:
            raise ValidationError(f"scale_mode must be one of {SCALE_MODES}, got {self.scale_mode!r}")
        if self.root_joint < 0:
            raise ValidationError(f"root_joint must be >= 0, got {self.root_joint}")
        object.__setattr__(
            self, "skeleton_edges", tuple((int(a), int(b)) for a, b in self.skeleton_edges)
        )
        object.__setattr__(self, "torso_joints", tuple(int(j) for j in self.torso_joints))

    def validate_for(self, joint_count: int) -> None:
        if not self.root_joint < joint_count:
            raise ValidationError(
                f"root_joint {self.root_joint} out of range for {joint_count} joints"
            )
        validate_edge_tree(self.skeleton_edges, joint_count)
        if self.scale_mode == "torso-length":
            a, b = self.torso_joints
            if not (0 <= a < joint_count and 0 <= b < joint_count) or a == b:
                raise ValidationError(f"torso_joints {self.torso_joints} invalid for {joint_count} joints")

    def to_record(self) -> dict:
        return {
            "root_joint": self.root_joint,
            "scale_mode": self.scale_mode,
            "align_heading": self.align_heading,
            "skeleton_edges": [list(e) for e in self.skeleton_edges],
            "torso_joints": list(self.torso_joints),
        }

    @classmethod
    def from_record(cls, record: dict) -> "NormalizationConfig":
        return cls(
            root_joint=int(record["root_joint"]),
            scale_mode=record["scale_mode"],
            align_heading=bool(record["align_heading"]),
            skeleton_edges=tuple((int(a), int(b)) for a, b in record["skeleton_edges"]),
            torso_joints=tuple(int(j) for j in record.get("torso_joints", (0, 8))),
        )


def _edge_lengths(frames: np.ndarray, edges) -> np.ndarray:
    """Per-frame bone lengths, shape (n, len(edges)); explicit column ops keep
    the arithmetic identical to a scalar per-joint evaluation."""
    heads = frames[:, [e[1] for e in edges], :]
    tails = frames[:, [e[0] for e in edges], :]
    d = heads - tails
    d2 = d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1]
    d2 = d2 + d[..., 2] * d[..., 2]
    return np.sqrt(d2)


def frame_scale_statistics(frames: np.ndarray, cfg: NormalizationConfig) -> np.ndarray:
    """Per-frame scale statistic for (n, J, 3) frames under cfg.scale_mode."""
    if cfg.scale_mode == "none":
        return np.ones(frames.shape[0], dtype=np.float64)
    if cfg.scale_mode == "torso-length":
        a, b = cfg.torso_joints
        return _edge_lengths(frames, ((a, b),))[:, 0]
    lengths = _edge_lengths(frames, cfg.skeleton_edges)
    acc = lengths[:, 0].copy()
    for e in range(1, lengths.shape[1]):
        acc += lengths[:, e]
    return acc / lengths.shape[1]


def sequence_scale(seq: PoseSequence, cfg: NormalizationConfig) -> float:
    """Median over frames of the scale statistic; raises on degenerate skeletons."""
    if cfg.scale_mode == "none":
        return 1.0
    scale = float(np.median(frame_scale_statistics(seq.frames, cfg)))
    if scale < EPS_SCALE:
        raise DegenerateSkeletonError(
            f"scale statistic {scale!r} below {EPS_SCALE} for sequence {seq.source_id!r}"
        )
    return scale


def heading_angle(seq: PoseSequence, cfg: NormalizationConfig) -> float:
    """Heading of the first frame: xy direction of right_hip -> left_hip."""
    names = seq.joint_names
    if "right_hip" not in names or "left_hip" not in names:
        raise ValidationError("heading alignment requires 'right_hip' and 'left_hip' joints")
    v = seq.frames[0, names.index("left_hip")] - seq.frames[0, names.index("right_hip")]
    if math.hypot(v[0], v[1]) < EPS_SCALE:
        raise DegenerateSkeletonError(
            f"hip vector has no horizontal component in sequence {seq.source_id!r}; heading undefined"
        )
    return math.atan2(v[1], v[0])


def _rotate_about_z(points: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    x, y, z = points[..., 0], points[..., 1], points[..., 2]
    out = np.empty_like(points)
    out[..., 0] = c * x - s * y
    out[..., 1] = s * x + c * y
    out[..., 2] = z
    return out


def normalize_pose(pose: np.ndarray, cfg: NormalizationConfig, scale: float,
                   heading: float = 0.0) -> np.ndarray:
    """Center one (J, 3) pose at the root joint, divide by scale, and undo heading."""
    if not scale > 0:
        raise ValidationError(f"scale must be positive, got {scale!r}")
    pose = np.asarray(pose, dtype=np.float64)
    centered = pose - pose[cfg.root_joint]
    scaled = centered / scale
    if cfg.align_heading:
        return _rotate_about_z(scaled, -heading)
    return scaled


def normalize_sequence(seq: PoseSequence, cfg: NormalizationConfig) -> PoseSequence:
    """Normalize every frame with one per-sequence scale and heading.

    The scale statistic is computed once (median over frames) and applied
    uniformly; root-centering is per-frame; heading (when enabled) comes from
    the first frame and is applied uniformly. The result carries normalized=True.
    """
    if seq.normalized:
        raise AlreadyNormalizedError(f"sequence {seq.source_id!r} is already normalized")
    cfg.validate_for(seq.joint_count)
    scale = sequence_scale(seq, cfg)
    heading = heading_angle(seq, cfg) if cfg.align_heading else 0.0
    centered = seq.frames - seq.frames[:, cfg.root_joint : cfg.root_joint + 1, :]
    frames = centered / scale
    if cfg.align_heading:
        frames = _rotate_about_z(frames, -heading)
    return seq.with_frames(frames, normalized=True)
