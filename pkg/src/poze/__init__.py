"""poze: few-shot motion technique modeling and per-joint feedback.

Core pipeline: load 3D pose sequences, normalize them, align pairs with
dynamic time warping, summarize an exemplar set into per-joint (mu, sigma)
statistics, and score new performances with z-scores and a Good/Bad verdict.
"""

from .classify import (
    ClassifierParams,
    FeedbackReport,
    classify,
    feedback,
    instance_distances,
    z_scores,
)
from .dtw import AlignmentResult, DtwConfig, dtw_align, frame_cost, pairwise_joint_distances
from .errors import (
    AlreadyNormalizedError,
    DegenerateSkeletonError,
    InfeasibleBandError,
    NotNormalizedError,
    PozeError,
    SkeletonMismatchError,
    ValidationError,
    Violation,
)
from .evaluate import EvalResult, GroupResult, evaluate
from .manifest import DatasetManifest, ManifestEntry, load_manifest, save_manifest
from .model import TechniqueModel, build_model, load_model, save_model
from .normalize import NormalizationConfig, normalize_pose, normalize_sequence
from .sequence import (
    PoseSequence,
    load_sequence,
    save_sequence,
    sequence_from_record,
    sequence_to_record,
    validate_sequence_record,
)
from .skeleton import Skeleton, default_skeleton, load_skeleton
from .synthetic import SyntheticSpec, gen_synthetic

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "AlreadyNormalizedError",
    "ClassifierParams",
    "DatasetManifest",
    "DegenerateSkeletonError",
    "DtwConfig",
    "EvalResult",
    "FeedbackReport",
    "GroupResult",
    "InfeasibleBandError",
    "ManifestEntry",
    "NormalizationConfig",
    "NotNormalizedError",
    "PoseSequence",
    "PozeError",
    "Skeleton",
    "SkeletonMismatchError",
    "SyntheticSpec",
    "TechniqueModel",
    "ValidationError",
    "Violation",
    "build_model",
    "classify",
    "default_skeleton",
    "dtw_align",
    "evaluate",
    "feedback",
    "frame_cost",
    "gen_synthetic",
    "instance_distances",
    "load_manifest",
    "load_model",
    "load_sequence",
    "load_skeleton",
    "normalize_pose",
    "normalize_sequence",
    "pairwise_joint_distances",
    "save_manifest",
    "save_model",
    "save_sequence",
    "sequence_from_record",
    "sequence_to_record",
    "validate_sequence_record",
    "z_scores",
]
