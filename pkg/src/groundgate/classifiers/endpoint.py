"""Remote classifier backend speaking the /v1/classify wire contract.

Request:  ``POST {endpoint_url}`` with ``{"query", "context",
"max_sequence_length"}``. Response: ``{"score": float in [0,1], "model_id":
str}``. Transport is HTTP+JSON; when the bearer-token environment variable is
set, it is sent as ``Authorization: Bearer <token>``.

Transport failures raise TransportError (retriable, never a silent ungrounded);
off-contract responses raise ProtocolError.
"""

from __future__ import annotations

import os
import time

import numpy as np
import requests

from ..corpus.records import QueryContextPair
from ..costmodel import ModelCostProfile, forward_flops
from ..errors import ProtocolError, TransportError
from .base import GroundednessVerdict, PairClassifier, as_single_pair, check_pair_inputs

TOKEN_ENV_VAR = "GROUNDGATE_CLASSIFY_TOKEN"

# Used when the caller does not supply a per-query FLOPs figure: a base-size
# 12-layer encoder at the configured sequence length.
_DEFAULT_ENCODER = dict(parameter_count=110e6, layers=12, hidden_dim=768)


class EndpointClassifier(PairClassifier):
    """Scores pairs by calling a remote /v1/classify server."""

    def __init__(self, endpoint_url: str, threshold: float = 0.5,
                 max_sequence_length: int = 512, timeout_s: float = 30.0,
                 flops_per_query: float | None = None,
                 token_env_var: str = TOKEN_ENV_VAR):
        self.endpoint_url = endpoint_url
        self.threshold = threshold
        self.max_sequence_length = max_sequence_length
        self.timeout_s = timeout_s
        self.flops_per_query = flops_per_query
        self.token_env_var = token_env_var

    @property
    def backend_id(self) -> str:
        return f"endpoint:{self.endpoint_url}"

    @property
    def artifact_version(self) -> str:
        return "remote"

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.token_env_var, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def _estimated_flops(self) -> float:
        if self.flops_per_query is not None:
            return float(self.flops_per_query)
        profile = ModelCostProfile(name="endpoint-default", sequence_length=self.max_sequence_length,
                                   **_DEFAULT_ENCODER)
        return forward_flops(profile)

    def _call(self, query: str, context: str) -> tuple[float, str]:
        body = {"query": query, "context": context,
                "max_sequence_length": self.max_sequence_length}
        try:
            response = requests.post(self.endpoint_url, json=body,
                                     headers=self._headers(), timeout=self.timeout_s)
        except requests.RequestException as exc:
            raise TransportError(f"classify endpoint unreachable: {exc}") from exc
        if response.status_code >= 500:
            raise TransportError(f"classify endpoint returned {response.status_code}")
        if response.status_code != 200:
            raise ProtocolError(
                f"classify endpoint rejected the request: {response.status_code} "
                f"{response.text[:200]}")
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProtocolError("classify endpoint returned non-JSON body") from exc
        score = payload.get("score")
        model_id = payload.get("model_id")
        if not isinstance(score, (int, float)) or not 0.0 <= float(score) <= 1.0:
            raise ProtocolError(f"classify endpoint returned invalid score {score!r}")
        if not isinstance(model_id, str) or not model_id:
            raise ProtocolError("classify endpoint response missing model_id")
        return float(score), model_id

    def score_pairs(self, X) -> np.ndarray:
        pairs = check_pair_inputs(X)
        return np.array([self._call(q, c)[0] for q, c in pairs], dtype=float)

    def classify(self, pair: QueryContextPair | tuple[str, str]) -> GroundednessVerdict:
        query, context = as_single_pair(pair)
        start = time.perf_counter()
        score, model_id = self._call(query, context)
        latency = time.perf_counter() - start
        verdict = self._finish_verdict(score, latency, self._estimated_flops())
        # Keep the reported identity tied to the remote model, not just the URL.
        return GroundednessVerdict(
            label=verdict.label, score=verdict.score,
            backend_id=f"endpoint:{model_id}", latency_s=verdict.latency_s,
            estimated_flops=verdict.estimated_flops)
