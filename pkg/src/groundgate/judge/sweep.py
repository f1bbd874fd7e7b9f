"""Prompt-sensitivity sweep: every template against every pair, audited.

One endpoint call per (template, pair) attempt, and every attempt lands in an
append-only JSONL response log before anything else happens — the log is the
source of truth. Accuracy aggregation is a separate pass over the log, which
makes sweeps resumable after interruption (completed judgments are skipped on
restart) and keeps partial results when an endpoint dies mid-run.

Scoring maps yes to grounded and no to ungrounded. Unparseable replies are
counted wrong by default; a policy can instead skip them or re-ask a bounded
number of times.
"""

from __future__ import annotations

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..corpus.records import GROUNDED, QueryContextPair
from ..errors import SweepAborted, TransportError, ValidationError
from .bank import PromptTemplate, render_prompt
from .client import JudgeClient
from .parsing import NO, UNPARSEABLE, YES, parse_verdict

UNPARSEABLE_POLICIES = ("wrong", "skip", "retry")


@dataclass
class SweepPolicy:
    unparseable: str = "wrong"
    unparseable_attempts: int = 2   # total asks per judgment when policy is "retry"
    transport_retries: int = 3
    retry_base_delay_s: float = 0.5
    concurrency: int = 1
    min_interval_s: float = 0.0     # simple rate limit between endpoint calls

    def __post_init__(self) -> None:
        if self.unparseable not in UNPARSEABLE_POLICIES:
            raise ValidationError(f"unknown unparseable policy {self.unparseable!r}")
        if self.concurrency < 1 or self.transport_retries < 0:
            raise ValidationError("concurrency must be >= 1 and retries >= 0")


@dataclass
class JudgeResponse:
    """One logged endpoint attempt."""

    template_id: str
    pair_id: str
    model_id: str
    raw: str
    verdict: str
    latency_s: float
    attempt: int
    final: bool
    error: str | None = None


class _ResponseLog:
    """Append-only JSONL log with single-writer serialization."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def completed(self) -> set[tuple[str, str]]:
        done: set[tuple[str, str]] = set()
        if not self.path.exists():
            return done
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                record = json.loads(line)
                if record.get("final"):
                    done.add((record["template_id"], record["pair_id"]))
        return done

    def append(self, response: JudgeResponse) -> None:
        record = response.__dict__
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                fh.flush()

    def final_entries(self) -> list[dict]:
        entries = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    record = json.loads(line)
                    if record.get("final"):
                        entries.append(record)
        return entries


class _RateLimiter:
    def __init__(self, min_interval_s: float):
        self.min_interval_s = min_interval_s
        self._lock = threading.Lock()
        self._last = 0.0

    def wait(self) -> None:
        if self.min_interval_s <= 0:
            return
        with self._lock:
            now = time.monotonic()
            delay = self._last + self.min_interval_s - now
            if delay > 0:
                time.sleep(delay)
            self._last = time.monotonic()


def _judge_one(template: PromptTemplate, pair: QueryContextPair, client: JudgeClient,
               policy: SweepPolicy, log: _ResponseLog, limiter: _RateLimiter) -> None:
    payload = render_prompt(template, pair)
    asks = policy.unparseable_attempts if policy.unparseable == "retry" else 1
    for ask in range(1, asks + 1):
        reply = None
        for attempt in range(policy.transport_retries + 1):
            limiter.wait()
            try:
                reply = client.complete(payload)
                break
            except TransportError as exc:
                log.append(JudgeResponse(
                    template_id=template.id, pair_id=pair.id,
                    model_id=getattr(client, "model_id", "unknown"),
                    raw="", verdict=UNPARSEABLE, latency_s=0.0,
                    attempt=attempt + 1, final=False, error=str(exc)))
                if attempt < policy.transport_retries:
                    time.sleep(policy.retry_base_delay_s * 2 ** attempt)
        if reply is None:
            raise SweepAborted(
                f"endpoint failed {policy.transport_retries + 1} times for "
                f"({template.id}, {pair.id}); response log preserved")
        verdict = parse_verdict(reply.raw)
        is_last_ask = ask == asks or verdict != UNPARSEABLE
        log.append(JudgeResponse(
            template_id=template.id, pair_id=pair.id, model_id=reply.model_id,
            raw=reply.raw, verdict=verdict, latency_s=reply.latency_s,
            attempt=ask, final=is_last_ask))
        if is_last_ask:
            return


def sweep(templates: Sequence[PromptTemplate], client: JudgeClient,
          pairs: Iterable[QueryContextPair], log_path: str | Path,
          policy: SweepPolicy | None = None,
          matrix_path: str | Path | None = None) -> dict:
    """Run (or resume) a full template-by-pair sweep and return the matrix."""
    policy = policy or SweepPolicy()
    pairs = list(pairs)
    log = _ResponseLog(log_path)
    limiter = _RateLimiter(policy.min_interval_s)
    done = log.completed()
    work = [(t, p) for t in templates for p in pairs if (t.id, p.id) not in done]

    try:
        if policy.concurrency == 1:
            for template, pair in work:
                _judge_one(template, pair, client, policy, log, limiter)
        else:
            with ThreadPoolExecutor(max_workers=policy.concurrency) as pool:
                futures = [pool.submit(_judge_one, t, p, client, policy, log, limiter)
                           for t, p in work]
                for future in futures:
                    future.result()
    except SweepAborted:
        raise
    except TransportError as exc:  # raised out of a worker
        raise SweepAborted(str(exc)) from exc

    matrix = aggregate_log(log_path, pairs, policy=policy)
    if matrix_path is not None:
        Path(matrix_path).write_text(
            json.dumps(matrix, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return matrix


def aggregate_log(log_path: str | Path, pairs: Iterable[QueryContextPair],
                  policy: SweepPolicy | None = None) -> dict:
    """Template-by-model accuracy matrix from a (possibly partial) response log."""
    policy = policy or SweepPolicy()
    gold = {p.id: p.label for p in pairs}
    cells: dict[tuple[str, str], dict] = {}
    for record in _ResponseLog(log_path).final_entries():
        pair_id = record["pair_id"]
        if pair_id not in gold:
            continue
        key = (record["template_id"], record["model_id"])
        cell = cells.setdefault(key, {"correct": 0, "n": 0, "unparseable": 0})
        verdict = record["verdict"]
        if verdict == UNPARSEABLE:
            cell["unparseable"] += 1
            if policy.unparseable == "skip":
                continue
            cell["n"] += 1  # counted wrong
            continue
        cell["n"] += 1
        expected = YES if gold[pair_id] == GROUNDED else NO
        if verdict == expected:
            cell["correct"] += 1

    matrix: dict = {}
    for (template_id, model_id), cell in sorted(cells.items()):
        accuracy = cell["correct"] / cell["n"] if cell["n"] else None
        matrix.setdefault(template_id, {})[model_id] = {
            "accuracy": accuracy,
            "n": cell["n"],
            "unparseable": cell["unparseable"],
        }
    return matrix
