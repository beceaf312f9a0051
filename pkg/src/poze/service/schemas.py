"""Pydantic request/response models for the HTTP service and the CLI client.

Sequence, model, and manifest payloads travel as their canonical JSON
documents (see docs/formats.md); the core validators run on them server-side
so HTTP clients get the same machine-readable violations as file loading.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from ..classify import DEFAULT_BINS, ClassifierParams
from ..dtw import DtwConfig
from ..normalize import NormalizationConfig


class NormalizationDoc(BaseModel):
    root_joint: int = 0
    scale_mode: str = "mean-bone-length"
    align_heading: bool = False
    skeleton_edges: list[tuple[int, int]] | None = None
    torso_joints: tuple[int, int] = (0, 8)

    def to_config(self) -> NormalizationConfig:
        kwargs: dict[str, Any] = {
            "root_joint": self.root_joint,
            "scale_mode": self.scale_mode,
            "align_heading": self.align_heading,
            "torso_joints": self.torso_joints,
        }
        if self.skeleton_edges is not None:
            kwargs["skeleton_edges"] = tuple(self.skeleton_edges)
        return NormalizationConfig(**kwargs)

    @classmethod
    def from_config(cls, cfg: NormalizationConfig) -> "NormalizationDoc":
        return cls(
            root_joint=cfg.root_joint,
            scale_mode=cfg.scale_mode,
            align_heading=cfg.align_heading,
            skeleton_edges=[tuple(e) for e in cfg.skeleton_edges],
            torso_joints=cfg.torso_joints,
        )


class DtwDoc(BaseModel):
    band: int | None = None
    frame_cost: str = "mean-joint-euclidean"

    def to_config(self) -> DtwConfig:
        return DtwConfig(band=self.band, frame_cost=self.frame_cost)


class ParamsDoc(BaseModel):
    tau: float = 2.0
    theta: float = 0.8
    bins: list[tuple[float | None, str]] | None = None

    def to_params(self) -> ClassifierParams:
        bins = DEFAULT_BINS if self.bins is None else tuple(self.bins)
        return ClassifierParams(tau=self.tau, theta=self.theta, bins=bins)


class ViolationDoc(BaseModel):
    code: str
    path: str
    message: str
    frame: int | None = None
    joint: int | None = None


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[ViolationDoc]


class BuildModelRequest(BaseModel):
    technique_name: str
    attribute_name: str
    exemplars: list[dict] = Field(description="poze-seq/1 documents")
    normalization: NormalizationDoc = NormalizationDoc()
    dtw: DtwDoc = DtwDoc()
    pair_normalizer: Literal["paper", "unordered-pairs"] = "paper"
    sigma_floor: float = 1e-8
    threads: int = 1


class ModelDoc(BaseModel):
    schema_version: Literal["poze-model/1"] = "poze-model/1"
    technique_name: str
    attribute_name: str
    exemplar_count: int
    mu: list[float]
    sigma: list[float]
    pair_normalizer: str
    sigma_floor: float
    joint_names: list[str]
    exemplar_ids: list[str] = []
    normalization: dict
    dtw: dict


class ClassifyRequest(BaseModel):
    model: dict = Field(description="poze-model/1 document")
    exemplars: list[dict] = Field(description="poze-seq/1 documents")
    sequence: dict = Field(description="poze-seq/1 document to score")
    params: ParamsDoc = ParamsDoc()
    threads: int = 1


class ReportDoc(BaseModel):
    schema_version: Literal["poze-report/1"] = "poze-report/1"
    model_id: str
    source_id: str
    joint_names: list[str]
    d_bar: list[float]
    z: list[float]
    joint_bins: list[str]
    pass_fraction: float
    verdict: Literal["Good", "Bad"]
    params_used: dict


class RegisterModelRequest(BaseModel):
    name: str
    model: dict = Field(description="poze-model/1 document")
    exemplars: list[dict] = Field(description="poze-seq/1 documents")


class RegistryEntry(BaseModel):
    name: str
    model_id: str
    exemplar_count: int
    joint_count: int


class RegistryClassifyRequest(BaseModel):
    sequence: dict
    params: ParamsDoc | None = None
    threads: int = 1


class SkeletonDoc(BaseModel):
    name: str
    joint_names: list[str]
    edges: list[tuple[int, int]]


class HealthResponse(BaseModel):
    status: str
    version: str
