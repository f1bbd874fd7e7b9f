"""The gate itself: classify first, then answer or abstain.

Routing is the safety property — the set of requests forwarded downstream is
exactly the set classified grounded. Classification failures fail closed (no
downstream call, ever); ungrounded verdicts abstain with a fixed refusal
message plus the verdict score and credit the avoided downstream FLOPs.
"""

from __future__ import annotations

import os
import uuid
from dataclasses import dataclass
from typing import Callable

import requests

from ..classifiers.base import GroundednessVerdict, PairClassifier
from ..corpus.records import GROUNDED
from ..costmodel import ModelCostProfile, forward_flops
from ..errors import (
    ClassifierUnavailable,
    DownstreamError,
    UnclassifiableInput,
    ValidationError,
)
from ..text import normalize_text
from .cache import DecisionCache, cache_key
from .metrics import GatewayMetrics, MetricsSnapshot

ACTION_ANSWER = "ANSWER"
ACTION_ABSTAIN = "ABSTAIN"

DEFAULT_ABSTAIN_MESSAGE = (
    "The supplied context does not contain enough information to answer this "
    "query (groundedness score {score:.3f}). Provide more context and retry."
)

DOWNSTREAM_TOKEN_ENV = "GROUNDGATE_DOWNSTREAM_TOKEN"

# Per-query inference cost of the downstream model a gate typically fronts:
# an 8B-parameter, 32-layer decoder at 512 tokens. Overridable in config.
_DEFAULT_DOWNSTREAM_PROFILE = ModelCostProfile(
    name="downstream-8b", parameter_count=8e9, layers=32, hidden_dim=4096,
    sequence_length=512)
DEFAULT_DOWNSTREAM_FLOPS = forward_flops(_DEFAULT_DOWNSTREAM_PROFILE)


@dataclass(frozen=True)
class GateRequest:
    query: str
    context: str
    request_id: str = ""
    downstream: str | None = None  # per-request answer endpoint override

    def __post_init__(self) -> None:
        if not normalize_text(self.query):
            raise ValidationError("gate request query is empty")
        if not normalize_text(self.context):
            raise ValidationError("gate request context is empty")
        if not self.request_id:
            object.__setattr__(self, "request_id", uuid.uuid4().hex)


@dataclass(frozen=True)
class GateDecision:
    verdict: GroundednessVerdict
    action: str
    answer: str | None
    message: str | None
    cache_hit: bool
    flops_saved_estimate: float

    def __post_init__(self) -> None:
        if self.action == ACTION_ABSTAIN and self.answer is not None:
            raise ValidationError("abstain decisions never carry an answer")
        if self.action == ACTION_ANSWER and self.verdict.label != GROUNDED:
            raise ValidationError("answer decisions require a grounded verdict")

    def to_dict(self) -> dict:
        record: dict = {
            "action": self.action,
            "verdict": self.verdict.to_dict(),
            "cache_hit": self.cache_hit,
            "flops_saved_estimate": self.flops_saved_estimate,
        }
        if self.answer is not None:
            record["answer"] = self.answer
        if self.message is not None:
            record["message"] = self.message
        return record


DownstreamFn = Callable[[GateRequest], str]


class HttpDownstream:
    """Forwards grounded requests to an answer endpoint over HTTP+JSON.

    ``POST url`` with ``{"request_id", "query", "context"}``; expects
    ``{"answer": str}`` back. A per-request override URL wins over the default.
    """

    def __init__(self, url: str, timeout_s: float = 60.0,
                 token_env_var: str = DOWNSTREAM_TOKEN_ENV):
        self.url = url
        self.timeout_s = timeout_s
        self.token_env_var = token_env_var

    def __call__(self, request: GateRequest) -> str:
        url = request.downstream or self.url
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.token_env_var, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        body = {"request_id": request.request_id, "query": request.query,
                "context": request.context}
        try:
            response = requests.post(url, json=body, headers=headers,
                                     timeout=self.timeout_s)
        except requests.RequestException as exc:
            raise DownstreamError(f"downstream unreachable: {exc}") from exc
        if response.status_code != 200:
            raise DownstreamError(f"downstream returned {response.status_code}")
        try:
            answer = response.json().get("answer")
        except ValueError as exc:
            raise DownstreamError("downstream returned non-JSON body") from exc
        if not isinstance(answer, str):
            raise DownstreamError("downstream response missing 'answer'")
        return answer


class Gateway:
    """Classify-then-route core, transport-agnostic and fully concurrent."""

    def __init__(self, classifier: PairClassifier, downstream: DownstreamFn | None = None,
                 cache_enabled: bool = True, cache_size: int = 1024,
                 abstain_message: str = DEFAULT_ABSTAIN_MESSAGE,
                 downstream_flops_per_query: float = DEFAULT_DOWNSTREAM_FLOPS):
        self.classifier = classifier
        self.downstream = downstream
        self.cache = DecisionCache(cache_size) if cache_enabled else None
        self.abstain_message = abstain_message
        self.downstream_flops_per_query = float(downstream_flops_per_query)
        self.metrics = GatewayMetrics()

    def _cache_key(self, request: GateRequest) -> str:
        return cache_key(
            query=request.query,
            context=request.context,
            backend_id=self.classifier.backend_id,
            threshold=self.classifier.threshold,
            artifact_version=self.classifier.artifact_version,
        )

    def _record(self, decision: GateDecision) -> None:
        if decision.action == ACTION_ANSWER:
            self.metrics.record_answered(cache_hit=decision.cache_hit)
        else:
            self.metrics.record_abstained(decision.flops_saved_estimate,
                                          cache_hit=decision.cache_hit)

    def gate(self, request: GateRequest) -> GateDecision:
        key = None
        if self.cache is not None:
            key = self._cache_key(request)
            cached = self.cache.get(key)
            if cached is not None:
                decision = GateDecision(
                    verdict=cached.verdict, action=cached.action,
                    answer=cached.answer, message=cached.message,
                    cache_hit=True, flops_saved_estimate=cached.flops_saved_estimate)
                self._record(decision)
                return decision

        try:
            verdict = self.classifier.classify((request.query, request.context))
        except UnclassifiableInput:
            # A request defect, not a backend fault; still fails closed.
            self.metrics.record_classifier_error()
            raise
        except Exception as exc:  # fail closed on any classifier fault
            self.metrics.record_classifier_error()
            raise ClassifierUnavailable(f"classification failed: {exc}") from exc

        if verdict.label != GROUNDED:
            decision = GateDecision(
                verdict=verdict, action=ACTION_ABSTAIN, answer=None,
                message=self.abstain_message.format(score=verdict.score),
                cache_hit=False,
                flops_saved_estimate=self.downstream_flops_per_query)
            self._record(decision)
            if self.cache is not None:
                self.cache.put(key, decision)
            return decision

        answer: str | None = None
        if self.downstream is not None:
            try:
                answer = self.downstream(request)
            except DownstreamError as exc:
                self.metrics.record_answered(cache_hit=False)
                if exc.verdict is None:
                    exc.verdict = verdict
                raise
            except Exception as exc:
                self.metrics.record_answered(cache_hit=False)
                raise DownstreamError(str(exc), verdict=verdict) from exc
        decision = GateDecision(
            verdict=verdict, action=ACTION_ANSWER, answer=answer, message=None,
            cache_hit=False, flops_saved_estimate=0.0)
        self._record(decision)
        if self.cache is not None:
            self.cache.put(key, decision)
        return decision

    def gate_batch(self, requests_: list[GateRequest]) -> list[GateDecision | Exception]:
        """Gate each element independently; failures come back in place."""
        results: list[GateDecision | Exception] = []
        for request in requests_:
            try:
                results.append(self.gate(request))
            except (ClassifierUnavailable, DownstreamError, UnclassifiableInput,
                    ValidationError) as exc:
                results.append(exc)
        return results

    def metrics_snapshot(self) -> MetricsSnapshot:
        return self.metrics.snapshot()
