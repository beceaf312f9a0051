"""Shared operations behind both the HTTP routes and the CLI.

Each op takes a request model, runs the core pipeline, and returns a response
model; PozeError propagates for the caller to map onto HTTP status codes or
process exit codes.
"""

from __future__ import annotations

from ..classify import feedback, report_to_record
from ..model import build_model, model_from_record, model_to_record
from ..sequence import sequence_from_record, validate_sequence_record
from .schemas import (
    BuildModelRequest,
    ClassifyRequest,
    ModelDoc,
    ReportDoc,
    ValidateResponse,
    ViolationDoc,
)


def validate_sequence_op(record) -> ValidateResponse:
    violations = validate_sequence_record(record)
    return ValidateResponse(
        valid=not violations,
        violations=[ViolationDoc(**v.to_record()) for v in violations],
    )


def build_model_op(request: BuildModelRequest) -> ModelDoc:
    exemplars = [sequence_from_record(doc) for doc in request.exemplars]
    model = build_model(
        exemplars,
        technique_name=request.technique_name,
        attribute_name=request.attribute_name,
        norm_cfg=request.normalization.to_config(),
        dtw_cfg=request.dtw.to_config(),
        pair_normalizer=request.pair_normalizer,
        sigma_floor=request.sigma_floor,
        threads=request.threads,
    )
    return ModelDoc(**model_to_record(model))


def classify_op(request: ClassifyRequest) -> ReportDoc:
    model = model_from_record(request.model)
    exemplars = [sequence_from_record(doc) for doc in request.exemplars]
    sequence = sequence_from_record(request.sequence)
    report = feedback(sequence, model, exemplars, request.params.to_params(),
                      threads=request.threads)
    return ReportDoc(**report_to_record(report))
