"""Reusable conformance checks for /v1/classify servers.

Any server claiming the wire contract (including the training kit's) can be
driven through ``check_classify_endpoint``. The checks only use the public
HTTP surface, so they work against in-process test clients and live servers
alike: the caller supplies a ``post(path_body) -> (status, payload)`` callable
or a base URL.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import requests

PROBE_PAIRS = [
    ("What is the melting point of iron?",
     "Iron melts at 1538 degrees Celsius under standard pressure."),
    ("Who painted the ceiling?",
     "The report covers quarterly grain shipments through the port of Odesa."),
    ("Where is the observatory located?",
     "The observatory sits on a ridge above the valley, far from city lights."),
]

PostFn = Callable[[dict], tuple[int, dict | None]]


@dataclass
class ContractReport:
    failures: list[str] = field(default_factory=list)
    checks_run: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, condition: bool, message: str) -> None:
        self.checks_run += 1
        if not condition:
            self.failures.append(message)


def _http_post(url: str, timeout_s: float) -> PostFn:
    def post(body: dict) -> tuple[int, dict | None]:
        response = requests.post(url, json=body, timeout=timeout_s)
        try:
            return response.status_code, response.json()
        except ValueError:
            return response.status_code, None
    return post


def check_classify_endpoint(target: str | PostFn, timeout_s: float = 10.0,
                            expect_deterministic: bool = True) -> ContractReport:
    """Run the wire-contract conformance suite against a classify server."""
    post = _http_post(target, timeout_s) if isinstance(target, str) else target
    report = ContractReport()

    # Well-formed requests succeed with an in-range score and a model id.
    first_scores = []
    for query, context in PROBE_PAIRS:
        status, payload = post({"query": query, "context": context,
                                "max_sequence_length": 256})
        report.record(status == 200, f"valid request returned {status}")
        if payload is None:
            report.record(False, "valid request returned a non-JSON body")
            continue
        score = payload.get("score")
        report.record(isinstance(score, (int, float)) and 0.0 <= float(score) <= 1.0,
                      f"score {score!r} not a float in [0, 1]")
        report.record(isinstance(payload.get("model_id"), str) and payload["model_id"] != "",
                      "model_id missing or empty")
        first_scores.append(score)

    # Malformed requests are rejected with a 400-class status.
    for broken in ({"query": "only a query"}, {"context": "only a context"}, {}):
        status, _ = post(broken)
        report.record(400 <= status < 500, f"malformed request {broken} returned {status}")

    # Deterministic backends return identical scores on replay.
    if expect_deterministic:
        for (query, context), before in zip(PROBE_PAIRS, first_scores):
            status, payload = post({"query": query, "context": context,
                                    "max_sequence_length": 256})
            again = payload.get("score") if payload else None
            report.record(status == 200 and again == before,
                          f"replayed request changed score: {before!r} -> {again!r}")

    return report
