"""Technique models: per-joint mean and spread of pairwise aligned distances.

A model summarizes an exemplar set by mu[j] and sigma[j] over the per-joint
distances of all unordered exemplar pairs. Two normalizers are supported:
`paper` divides the pair sums by m(m-1) (ordered-pair count), `unordered-pairs`
divides by m(m-1)/2 (the true unordered mean). Accumulation is canonical:
exemplars sort by source_id, pairs run (i ascending, then l ascending), so
results are bit-identical under input permutation and any worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dtw import DtwConfig, pairwise_joint_distances
from .errors import PozeError, SkeletonMismatchError, ValidationError
from .normalize import NormalizationConfig, normalize_sequence
from .sequence import PoseSequence

MODEL_SCHEMA_VERSION = "poze-model/1"
PAIR_NORMALIZERS = ("paper", "unordered-pairs")
DEFAULT_SIGMA_FLOOR = 1e-8


@dataclass(frozen=True)
class TechniqueModel:
    """Per-joint (mu, sigma) statistics plus the configs that produced them."""

    technique_name: str
    attribute_name: str
    exemplar_count: int
    mu: np.ndarray
    sigma: np.ndarray
    normalization: NormalizationConfig
    dtw: DtwConfig
    pair_normalizer: str
    sigma_floor: float
    joint_names: tuple[str, ...]
    exemplar_ids: tuple[str, ...] = ()

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64)
        sigma = np.asarray(self.sigma, dtype=np.float64)
        if self.exemplar_count < 2:
            raise ValidationError(f"a model needs >= 2 exemplars, got {self.exemplar_count}")
        if self.pair_normalizer not in PAIR_NORMALIZERS:
            raise ValidationError(
                f"pair_normalizer must be one of {PAIR_NORMALIZERS}, got {self.pair_normalizer!r}"
            )
        if not self.sigma_floor > 0:
            raise ValidationError(f"sigma_floor must be positive, got {self.sigma_floor!r}")
        j = len(self.joint_names)
        if mu.shape != (j,) or sigma.shape != (j,):
            raise ValidationError(
                f"mu/sigma must have length {j}, got {mu.shape} and {sigma.shape}"
            )
        if np.any(mu < 0) or np.any(sigma < 0) or not np.all(np.isfinite(mu)) or not np.all(np.isfinite(sigma)):
            raise ValidationError("mu and sigma must be finite and nonnegative")
        for arr in (mu, sigma):
            arr.flags.writeable = False
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "joint_names", tuple(self.joint_names))
        object.__setattr__(self, "exemplar_ids", tuple(self.exemplar_ids))

    @property
    def joint_count(self) -> int:
        return len(self.joint_names)

    @property
    def model_id(self) -> str:
        return f"{self.technique_name}/{self.attribute_name}"


def prepare_exemplars(exemplars: list[PoseSequence],
                      norm_cfg: NormalizationConfig) -> list[PoseSequence]:
    """Sort by source_id and normalize whatever is not already normalized.

    Duplicate source_ids are rejected: the sort is what fixes the canonical
    accumulation order, and duplicates would leave it ambiguous.
    """
    ids = [s.source_id for s in exemplars]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValidationError(f"duplicate exemplar source_ids: {dupes}")
    names = {s.joint_names for s in exemplars}
    if len(names) > 1:
        raise SkeletonMismatchError("exemplars carry mixed skeletons")
    ordered = sorted(exemplars, key=lambda s: s.source_id)
    return [s if s.normalized else normalize_sequence(s, norm_cfg) for s in ordered]


def _aligned_pair(a: PoseSequence, b: PoseSequence, dtw_cfg: DtwConfig) -> np.ndarray:
    try:
        return pairwise_joint_distances(a, b, dtw_cfg)
    except PozeError as exc:
        exc.args = (f"pair ({a.source_id!r}, {b.source_id!r}): {exc}",)
        raise


def _pair_distances(prepared: list[PoseSequence], dtw_cfg: DtwConfig,
                    threads: int) -> list[np.ndarray]:
    pairs = [(i, l) for i in range(len(prepared)) for l in range(i + 1, len(prepared))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(
                lambda p: _aligned_pair(prepared[p[0]], prepared[p[1]], dtw_cfg), pairs,
            ))
    return [_aligned_pair(prepared[i], prepared[l], dtw_cfg) for i, l in pairs]


def build_model(exemplars: list[PoseSequence], technique_name: str, attribute_name: str,
                norm_cfg: NormalizationConfig = NormalizationConfig(),
                dtw_cfg: DtwConfig = DtwConfig(),
                pair_normalizer: str = "paper",
                sigma_floor: float = DEFAULT_SIGMA_FLOOR,
                threads: int = 1) -> TechniqueModel:
    """Build the per-joint (mu, sigma) summary of an exemplar set.

    All m(m-1)/2 unordered pairs are aligned; mu[j] and sigma[j] are the
    normalized first and second moments of the pair distances, sigma floored
    at sigma_floor so downstream z-scores stay finite.
    """
    if pair_normalizer not in PAIR_NORMALIZERS:
        raise ValidationError(
            f"pair_normalizer must be one of {PAIR_NORMALIZERS}, got {pair_normalizer!r}"
        )
    m = len(exemplars)
    if m < 2:
        raise ValidationError(f"build_model needs >= 2 exemplars, got {m}")
    prepared = prepare_exemplars(exemplars, norm_cfg)
    distances = _pair_distances(prepared, dtw_cfg, threads)

    denom = float(m * (m - 1)) if pair_normalizer == "paper" else float(m * (m - 1) // 2)
    acc = distances[0].copy()
    for d in distances[1:]:
        acc = acc + d
    mu = acc / denom
    res = distances[0] - mu
    ssq = res * res
    for d in distances[1:]:
        res = d - mu
        ssq = ssq + res * res
    sigma = np.maximum(np.sqrt(ssq / denom), sigma_floor)

    return TechniqueModel(
        technique_name=technique_name,
        attribute_name=attribute_name,
        exemplar_count=m,
        mu=mu,
        sigma=sigma,
        normalization=norm_cfg,
        dtw=dtw_cfg,
        pair_normalizer=pair_normalizer,
        sigma_floor=sigma_floor,
        joint_names=prepared[0].joint_names,
        exemplar_ids=tuple(s.source_id for s in prepared),
    )


def model_to_record(model: TechniqueModel) -> dict:
    return {
        "schema_version": MODEL_SCHEMA_VERSION,
        "technique_name": model.technique_name,
        "attribute_name": model.attribute_name,
        "exemplar_count": model.exemplar_count,
        "mu": model.mu.tolist(),
        "sigma": model.sigma.tolist(),
        "pair_normalizer": model.pair_normalizer,
        "sigma_floor": model.sigma_floor,
        "joint_names": list(model.joint_names),
        "exemplar_ids": list(model.exemplar_ids),
        "normalization": model.normalization.to_record(),
        "dtw": model.dtw.to_record(),
    }


def model_from_record(record: dict) -> TechniqueModel:
    if not isinstance(record, dict):
        raise ValidationError("model document must be a JSON object")
    version = record.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise ValidationError(f"unsupported model schema_version {version!r}")
    required = ("technique_name", "attribute_name", "exemplar_count", "mu", "sigma",
                "pair_normalizer", "sigma_floor", "joint_names", "normalization", "dtw")
    missing = [f for f in required if f not in record]
    if missing:
        raise ValidationError(f"model document missing fields: {missing}")
    joint_names = tuple(str(n) for n in record["joint_names"])
    mu = np.asarray(record["mu"], dtype=np.float64)
    sigma = np.asarray(record["sigma"], dtype=np.float64)
    if mu.shape != (len(joint_names),) or sigma.shape != (len(joint_names),):
        raise ValidationError(
            f"mu/sigma length must equal joint count {len(joint_names)}, "
            f"got {mu.shape[0] if mu.ndim == 1 else mu.shape} and "
            f"{sigma.shape[0] if sigma.ndim == 1 else sigma.shape}"
        )
    return TechniqueModel(
        technique_name=str(record["technique_name"]),
        attribute_name=str(record["attribute_name"]),
        exemplar_count=int(record["exemplar_count"]),
        mu=mu,
        sigma=sigma,
        normalization=NormalizationConfig.from_record(record["normalization"]),
        dtw=DtwConfig.from_record(record["dtw"]),
        pair_normalizer=str(record["pair_normalizer"]),
        sigma_floor=float(record["sigma_floor"]),
        joint_names=joint_names,
        exemplar_ids=tuple(str(i) for i in record.get("exemplar_ids", ())),
    )


def save_model(model: TechniqueModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_record(model), fh, allow_nan=False, indent=2)
        fh.write("\n")


def load_model(path) -> TechniqueModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    try:
        return model_from_record(record)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}", exc.violations) from None
