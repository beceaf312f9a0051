"""FastAPI application: stateless pipeline endpoints plus a model registry.

The registry holds named (model, normalized exemplars) pairs in memory so a
long-running deployment can classify many uploads without re-sending or
re-normalizing the exemplar set on every request. Registered exemplars are
normalized once with the model's own config; classification results are
bit-identical to the stateless path.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..classify import ClassifierParams, feedback, report_to_record
from ..errors import PozeError, ValidationError
from ..model import TechniqueModel, model_from_record
from ..normalize import normalize_sequence
from ..sequence import PoseSequence, sequence_from_record
from ..skeleton import default_skeleton
from .ops import build_model_op, classify_op, validate_sequence_op
from .schemas import (
    BuildModelRequest,
    ClassifyRequest,
    HealthResponse,
    ModelDoc,
    RegisterModelRequest,
    RegistryClassifyRequest,
    RegistryEntry,
    ReportDoc,
    SkeletonDoc,
    ValidateResponse,
)


@dataclass
class _Registered:
    model: TechniqueModel
    exemplars: list[PoseSequence]


class ModelRegistry:
    def __init__(self):
        self._lock = threading.Lock()
        self._models: dict[str, _Registered] = {}

    def register(self, name: str, model: TechniqueModel,
                 exemplars: list[PoseSequence]) -> None:
        with self._lock:
            if name in self._models:
                raise KeyError(name)
            self._models[name] = _Registered(model, exemplars)

    def get(self, name: str) -> _Registered:
        with self._lock:
            return self._models[name]

    def remove(self, name: str) -> None:
        with self._lock:
            del self._models[name]

    def entries(self) -> list[RegistryEntry]:
        with self._lock:
            return [
                RegistryEntry(name=name, model_id=reg.model.model_id,
                              exemplar_count=len(reg.exemplars),
                              joint_count=reg.model.joint_count)
                for name, reg in sorted(self._models.items())
            ]


def create_app() -> FastAPI:
    app = FastAPI(title="poze", version=__version__,
                  description="Motion technique modeling and per-joint feedback")
    registry = ModelRegistry()
    app.state.registry = registry

    @app.exception_handler(PozeError)
    async def poze_error_handler(request: Request, exc: PozeError):
        if isinstance(exc, ValidationError):
            return JSONResponse(status_code=422, content={
                "detail": str(exc),
                "violations": [v.to_record() for v in exc.violations],
            })
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/skeleton/default", response_model=SkeletonDoc)
    def skeleton() -> SkeletonDoc:
        skel = default_skeleton()
        return SkeletonDoc(name=skel.name, joint_names=list(skel.joint_names),
                           edges=[tuple(e) for e in skel.edges])

    @app.post("/sequences/validate", response_model=ValidateResponse)
    def validate(record: dict = Body()) -> ValidateResponse:
        return validate_sequence_op(record)

    @app.post("/models/build", response_model=ModelDoc)
    def build(request: BuildModelRequest) -> ModelDoc:
        return build_model_op(request)

    @app.post("/classify", response_model=ReportDoc)
    def classify(request: ClassifyRequest) -> ReportDoc:
        return classify_op(request)

    @app.post("/registry/models", response_model=RegistryEntry, status_code=201)
    def register(request: RegisterModelRequest) -> RegistryEntry:
        model = model_from_record(request.model)
        exemplars = [sequence_from_record(doc) for doc in request.exemplars]
        normalized = [s if s.normalized else normalize_sequence(s, model.normalization)
                      for s in sorted(exemplars, key=lambda s: s.source_id)]
        try:
            registry.register(request.name, model, normalized)
        except KeyError:
            raise HTTPException(status_code=409,
                                detail=f"model {request.name!r} already registered")
        return RegistryEntry(name=request.name, model_id=model.model_id,
                             exemplar_count=len(normalized),
                             joint_count=model.joint_count)

    @app.get("/registry/models", response_model=list[RegistryEntry])
    def list_models() -> list[RegistryEntry]:
        return registry.entries()

    @app.post("/registry/models/{name}/classify", response_model=ReportDoc)
    def classify_registered(name: str, request: RegistryClassifyRequest) -> ReportDoc:
        try:
            registered = registry.get(name)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no model named {name!r}")
        sequence = sequence_from_record(request.sequence)
        params = request.params.to_params() if request.params is not None else ClassifierParams()
        report = feedback(sequence, registered.model, registered.exemplars, params,
                          threads=request.threads)
        return ReportDoc(**report_to_record(report))

    @app.delete("/registry/models/{name}", status_code=204)
    def unregister(name: str) -> None:
        try:
            registry.remove(name)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no model named {name!r}")

    return app
