"""HTTP surface of the gate.

* ``POST /v1/gate`` — one decision.
* ``POST /v1/gate/batch`` — a JSON list of requests, gated independently.
* ``GET /v1/metrics`` — monotone counters.
* ``GET /healthz`` — liveness.

Error mapping: invalid request 400/422; unclassifiable query 400; classifier
fault 503 (failed closed); downstream fault 502 with the verdict attached.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..errors import ClassifierUnavailable, DownstreamError, UnclassifiableInput, ValidationError
from .core import Gateway, GateRequest

_HANDLED = (ValidationError, UnclassifiableInput, ClassifierUnavailable, DownstreamError)


class GateRequestBody(BaseModel):
    query: str
    context: str
    request_id: str = ""
    downstream: str | None = Field(default=None, description="answer endpoint override")


def _gate_once(gateway: Gateway, body: GateRequestBody) -> dict:
    request = GateRequest(query=body.query, context=body.context,
                          request_id=body.request_id, downstream=body.downstream)
    decision = gateway.gate(request)
    return {"request_id": request.request_id, **decision.to_dict()}


def _error_content(exc: Exception) -> tuple[int, dict]:
    if isinstance(exc, (ValidationError, UnclassifiableInput)):
        return 400, {"error": "invalid_request", "detail": str(exc)}
    if isinstance(exc, ClassifierUnavailable):
        return 503, {"error": "classifier_unavailable", "detail": str(exc)}
    if isinstance(exc, DownstreamError):
        content = {"error": "downstream_failed", "detail": str(exc)}
        if exc.verdict is not None:
            content["verdict"] = exc.verdict.to_dict()
        return 502, content
    raise exc


def create_app(gateway: Gateway) -> FastAPI:
    app = FastAPI(title="groundgate", version="0.1.0")
    app.state.gateway = gateway

    @app.post("/v1/gate")
    def gate(body: GateRequestBody):
        try:
            return _gate_once(gateway, body)
        except _HANDLED as exc:
            status, content = _error_content(exc)
            return JSONResponse(status_code=status, content=content)

    @app.post("/v1/gate/batch")
    def gate_batch(bodies: list[GateRequestBody]):
        results = []
        for body in bodies:
            try:
                results.append(_gate_once(gateway, body))
            except _HANDLED as exc:
                status, content = _error_content(exc)
                results.append({"request_id": body.request_id,
                                "status": status, **content})
        return {"decisions": results}

    @app.get("/v1/metrics")
    def metrics():
        return gateway.metrics_snapshot().to_dict()

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    return app


def serve(gateway: Gateway, host: str = "127.0.0.1", port: int = 8080) -> None:
    import uvicorn

    uvicorn.run(create_app(gateway), host=host, port=port)
