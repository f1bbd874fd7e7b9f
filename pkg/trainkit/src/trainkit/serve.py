"""Classifier serving: the /v1/classify wire contract over a trained artifact.

Request ``{"query", "context", "max_sequence_length"?}`` returns
``{"score": P(grounded), "model_id"}``. Missing or unusable fields are a
400-class response. When the bearer-token environment variable is set,
requests must carry ``Authorization: Bearer <token>``. A bounded worker lock
around the model session keeps concurrent requests safe.
"""

from __future__ import annotations

import os
import threading

import torch
from fastapi import FastAPI, Header
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .data import encode_example
from .export import load_native_model
from .model import GROUNDED_INDEX
from .train import ModelArtifact

TOKEN_ENV_VAR = "GROUNDGATE_CLASSIFY_TOKEN"


class ClassifyBody(BaseModel):
    query: str = Field(min_length=1)
    context: str = Field(min_length=1)
    max_sequence_length: int | None = None


class ClassifierSession:
    def __init__(self, artifact_dir: str):
        self.artifact = ModelArtifact.load(artifact_dir)
        self.model, self.vocab = load_native_model(self.artifact)
        self.model_id = self.artifact.manifest["model_id"]
        self.max_sequence_length = int(self.artifact.manifest["max_sequence_length"])
        self._lock = threading.Lock()

    def score(self, query: str, context: str, max_sequence_length: int | None) -> float:
        budget = min(max_sequence_length or self.max_sequence_length,
                     self.max_sequence_length)
        ids = encode_example(query, context, self.vocab, budget)
        if ids is None:
            raise ValueError(f"query exceeds the {budget}-token budget")
        input_ids = torch.tensor([ids], dtype=torch.long)
        mask = torch.ones_like(input_ids)
        with self._lock, torch.no_grad():
            logits = self.model(input_ids, mask)
        return float(torch.softmax(logits, dim=-1)[0, GROUNDED_INDEX])


def create_app(artifact_dir: str) -> FastAPI:
    session = ClassifierSession(artifact_dir)
    app = FastAPI(title="trainkit classifier", version="0.1.0")
    app.state.session = session

    @app.post("/v1/classify")
    def classify(body: ClassifyBody, authorization: str | None = Header(default=None)):
        expected = os.environ.get(TOKEN_ENV_VAR, "")
        if expected and authorization != f"Bearer {expected}":
            return JSONResponse(status_code=401,
                                content={"error": "missing or invalid bearer token"})
        if not body.query.strip() or not body.context.strip():
            return JSONResponse(status_code=400,
                                content={"error": "query and context must be non-empty"})
        try:
            score = session.score(body.query, body.context, body.max_sequence_length)
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {"score": score, "model_id": session.model_id}

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "model_id": session.model_id}

    return app


def serve(artifact_dir: str, host: str = "127.0.0.1", port: int = 8081) -> None:
    import uvicorn

    uvicorn.run(create_app(artifact_dir), host=host, port=port)
