"""Scoring new sequences against a technique model.

Pipeline per instance: per-joint instance distances against the exemplar set,
z-scores against the model's (mu, sigma), qualitative bins, and the verdict:
Good iff the fraction of joints with z < tau strictly exceeds theta. Both
inequalities are strict, including at the boundaries.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dtw import DtwConfig
from .errors import PozeError, SkeletonMismatchError, ValidationError
from .model import TechniqueModel, prepare_exemplars, _aligned_pair
from .normalize import NormalizationConfig, normalize_sequence
from .sequence import PoseSequence

REPORT_SCHEMA_VERSION = "poze-report/1"

#: (upper edge, label); None marks the open-ended last bin
DEFAULT_BINS: tuple[tuple[float | None, str], ...] = (
    (-1.0, "very good"),
    (1.0, "good"),
    (2.0, "neutral"),
    (3.0, "bad"),
    (None, "very bad"),
)


@dataclass(frozen=True)
class ClassifierParams:
    """Verdict thresholds and the qualitative z-score bins."""

    tau: float = 2.0
    theta: float = 0.8
    bins: tuple[tuple[float | None, str], ...] = DEFAULT_BINS

    def __post_init__(self):
        if not (math.isfinite(self.tau)):
            raise ValidationError(f"tau must be finite, got {self.tau!r}")
        if not (0.0 <= self.theta < 1.0):
            raise ValidationError(f"theta must lie in [0, 1), got {self.theta!r}")
        bins = tuple((None if e is None else float(e), str(label)) for e, label in self.bins)
        if not bins or bins[-1][0] is not None:
            raise ValidationError("the last bin must be open-ended (upper edge None)")
        edges = [e for e, _ in bins[:-1]]
        if any(e is None for e in edges):
            raise ValidationError("only the last bin may be open-ended")
        if edges != sorted(edges) or len(set(edges)) != len(edges):
            raise ValidationError("bin upper edges must be strictly increasing")
        object.__setattr__(self, "bins", bins)

    def to_record(self) -> dict:
        return {
            "tau": self.tau,
            "theta": self.theta,
            "bins": [[edge, label] for edge, label in self.bins],
        }

    @classmethod
    def from_record(cls, record: dict) -> "ClassifierParams":
        return cls(
            tau=float(record["tau"]),
            theta=float(record["theta"]),
            bins=tuple((e if e is None else float(e), str(label)) for e, label in record["bins"]),
        )


@dataclass(frozen=True)
class FeedbackReport:
    """Per-joint feedback plus the overall verdict for one sequence."""

    d_bar: np.ndarray
    z: np.ndarray
    joint_bins: tuple[str, ...]
    pass_fraction: float
    verdict: str
    params_used: ClassifierParams
    model_id: str
    source_id: str
    joint_names: tuple[str, ...]


def instance_distances(s_new: PoseSequence, exemplars: list[PoseSequence],
                       norm_cfg: NormalizationConfig = NormalizationConfig(),
                       dtw_cfg: DtwConfig = DtwConfig(),
                       threads: int = 1) -> np.ndarray:
    """Mean per-joint aligned distance of s_new against every exemplar.

    Exemplars are taken in canonical source_id order; the accumulation is a
    plain sum in that order divided by the exemplar count, so results are
    bit-identical for any worker count.
    """
    if not exemplars:
        raise ValidationError("instance_distances needs at least one exemplar")
    prepared = prepare_exemplars(exemplars, norm_cfg)
    if s_new.joint_count != prepared[0].joint_count:
        raise SkeletonMismatchError(
            f"sequence has {s_new.joint_count} joints, exemplars have {prepared[0].joint_count}"
        )
    new_norm = s_new if s_new.normalized else normalize_sequence(s_new, norm_cfg)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            distances = list(pool.map(lambda e: _aligned_pair(new_norm, e, dtw_cfg), prepared))
    else:
        distances = [_aligned_pair(new_norm, e, dtw_cfg) for e in prepared]
    acc = distances[0].copy()
    for d in distances[1:]:
        acc += d
    return acc / len(prepared)


def z_scores(d_bar: np.ndarray, model: TechniqueModel) -> np.ndarray:
    """Per-joint z-scores; sigma is floored so the division is always finite."""
    d_bar = np.asarray(d_bar, dtype=np.float64)
    if d_bar.shape != (model.joint_count,):
        raise ValidationError(
            f"d_bar must have length {model.joint_count}, got {d_bar.shape}"
        )
    return (d_bar - model.mu) / np.maximum(model.sigma, model.sigma_floor)


def assign_bins(z: np.ndarray, params: ClassifierParams) -> tuple[str, ...]:
    """Each joint lands in the first bin whose upper edge is >= its z-score."""
    labels = []
    for value in np.asarray(z, dtype=np.float64).tolist():
        for edge, label in params.bins:
            if edge is None or value <= edge:
                labels.append(label)
                break
    return tuple(labels)


def classify(z: np.ndarray, params: ClassifierParams) -> tuple[float, str, tuple[str, ...]]:
    """Verdict from z-scores: (pass_fraction, verdict, joint_bins).

    The indicator z < tau and the verdict pass_fraction > theta are both
    strict; z == tau fails the joint and pass_fraction == theta is Bad.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise ValidationError(f"z must be a nonempty 1-D array, got shape {z.shape}")
    passed = int(np.count_nonzero(z < params.tau))
    pass_fraction = passed / z.size
    verdict = "Good" if pass_fraction > params.theta else "Bad"
    return pass_fraction, verdict, assign_bins(z, params)


def _staged(stage: str, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except PozeError as exc:
        if exc.stage is None:
            exc.stage = stage
            exc.args = (f"[{stage}] {exc}",)
        raise


def feedback(s_new: PoseSequence, model: TechniqueModel, exemplars: list[PoseSequence],
             params: ClassifierParams = ClassifierParams(),
             threads: int = 1) -> FeedbackReport:
    """Full scoring pipeline for one new sequence; errors carry the failing stage."""
    if s_new.joint_count != model.joint_count:
        raise SkeletonMismatchError(
            f"sequence has {s_new.joint_count} joints, model expects {model.joint_count}"
        )
    d_bar = _staged("instance-distances", instance_distances,
                    s_new, exemplars, model.normalization, model.dtw, threads)
    z = _staged("z-scores", z_scores, d_bar, model)
    pass_fraction, verdict, joint_bins = _staged("classify", classify, z, params)
    return FeedbackReport(
        d_bar=d_bar,
        z=z,
        joint_bins=joint_bins,
        pass_fraction=pass_fraction,
        verdict=verdict,
        params_used=params,
        model_id=model.model_id,
        source_id=s_new.source_id,
        joint_names=model.joint_names,
    )


def report_to_record(report: FeedbackReport) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "model_id": report.model_id,
        "source_id": report.source_id,
        "joint_names": list(report.joint_names),
        "d_bar": report.d_bar.tolist(),
        "z": report.z.tolist(),
        "joint_bins": list(report.joint_bins),
        "pass_fraction": report.pass_fraction,
        "verdict": report.verdict,
        "params_used": report.params_used.to_record(),
    }


def report_from_record(record: dict) -> FeedbackReport:
    return FeedbackReport(
        d_bar=np.asarray(record["d_bar"], dtype=np.float64),
        z=np.asarray(record["z"], dtype=np.float64),
        joint_bins=tuple(record["joint_bins"]),
        pass_fraction=float(record["pass_fraction"]),
        verdict=record["verdict"],
        params_used=ClassifierParams.from_record(record["params_used"]),
        model_id=record["model_id"],
        source_id=record["source_id"],
        joint_names=tuple(record["joint_names"]),
    )


def render_report_table(report: FeedbackReport) -> str:
    """Fixed-layout text table: per-joint name, d_bar, z, bin, then the verdict."""
    width = max(len(n) for n in report.joint_names)
    lines = [f"{'joint':<{width}}  {'d_bar':>12}  {'z':>9}  bin"]
    for name, d, z, label in zip(report.joint_names, report.d_bar, report.z, report.joint_bins):
        lines.append(f"{name:<{width}}  {d:>12.6f}  {z:>9.3f}  {label}")
    p = report.params_used
    lines.append(
        f"pass_fraction {report.pass_fraction:.4f} | tau {p.tau:g} | theta {p.theta:g} "
        f"| verdict {report.verdict}"
    )
    return "\n".join(lines)
