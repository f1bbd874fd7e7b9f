"""Monotone service counters; every gate request lands in exactly one outcome
bucket, so answered + abstained + classifier_errors == requests always holds."""

from __future__ import annotations

import threading
from dataclasses import dataclass


@dataclass(frozen=True)
class MetricsSnapshot:
    requests: int
    answered: int
    abstained: int
    cache_hits: int
    classifier_errors: int
    cumulative_flops_saved_estimate: float

    def to_dict(self) -> dict:
        return {
            "requests": self.requests,
            "answered": self.answered,
            "abstained": self.abstained,
            "cache_hits": self.cache_hits,
            "classifier_errors": self.classifier_errors,
            "cumulative_flops_saved_estimate": self.cumulative_flops_saved_estimate,
        }


class GatewayMetrics:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._requests = 0
        self._answered = 0
        self._abstained = 0
        self._cache_hits = 0
        self._classifier_errors = 0
        self._flops_saved = 0.0

    def record_answered(self, cache_hit: bool) -> None:
        with self._lock:
            self._requests += 1
            self._answered += 1
            if cache_hit:
                self._cache_hits += 1

    def record_abstained(self, flops_saved: float, cache_hit: bool) -> None:
        with self._lock:
            self._requests += 1
            self._abstained += 1
            self._flops_saved += flops_saved
            if cache_hit:
                self._cache_hits += 1

    def record_classifier_error(self) -> None:
        with self._lock:
            self._requests += 1
            self._classifier_errors += 1

    def snapshot(self) -> MetricsSnapshot:
        with self._lock:
            return MetricsSnapshot(
                requests=self._requests,
                answered=self._answered,
                abstained=self._abstained,
                cache_hits=self._cache_hits,
                classifier_errors=self._classifier_errors,
                cumulative_flops_saved_estimate=self._flops_saved,
            )
