"""Deterministic lexical-overlap baseline: zero FLOPs, no model artifact.

The score is the fraction of distinct query tokens that also occur in the
context, after lowercasing, punctuation stripping, whitespace tokenization and
stopword removal. The stopword list ships with the package and is versioned, so
scores are stable across installs and platforms.
"""

from __future__ import annotations

import hashlib
import time
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from ..corpus.records import QueryContextPair
from ..text import bag_tokens
from .base import GroundednessVerdict, PairClassifier, as_single_pair, check_pair_inputs


@lru_cache(maxsize=8)
def _load_stopwords(path: str | None) -> tuple[frozenset[str], str]:
    """Return (stopwords, version digest) for the bundled or a custom list."""
    if path is None:
        raw = resources.files("groundgate.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    words = frozenset(
        line.strip() for line in raw.splitlines()
        if line.strip() and not line.startswith("#")
    )
    digest = hashlib.sha256("\n".join(sorted(words)).encode("utf-8")).hexdigest()[:12]
    return words, digest


def default_stopwords() -> frozenset[str]:
    return _load_stopwords(None)[0]


def lexical_overlap_score(query: str, context: str,
                          stopwords: frozenset[str] | None = None) -> float:
    """|T(query) & T(context)| / |T(query)|, 0 when T(query) is empty."""
    if not query or not context:
        raise ValueError("query and context must be non-empty")
    if stopwords is None:
        stopwords = default_stopwords()
    query_tokens = bag_tokens(query, stopwords)
    if not query_tokens:
        return 0.0
    context_tokens = bag_tokens(context, stopwords)
    return len(query_tokens & context_tokens) / len(query_tokens)


class LexicalOverlapClassifier(PairClassifier):
    """Stateless overlap scorer behind the common classify contract."""

    def __init__(self, threshold: float = 0.5, stopwords_path: str | None = None):
        self.threshold = threshold
        self.stopwords_path = stopwords_path

    @property
    def backend_id(self) -> str:
        return "lexical"

    @property
    def artifact_version(self) -> str:
        return f"stopwords-{_load_stopwords(self.stopwords_path)[1]}"

    def score_pairs(self, X) -> np.ndarray:
        stopwords = _load_stopwords(self.stopwords_path)[0]
        pairs = check_pair_inputs(X)
        return np.array(
            [lexical_overlap_score(q, c, stopwords) for q, c in pairs], dtype=float)

    def classify(self, pair: QueryContextPair | tuple[str, str]) -> GroundednessVerdict:
        query, context = as_single_pair(pair)
        stopwords = _load_stopwords(self.stopwords_path)[0]
        start = time.perf_counter()
        score = lexical_overlap_score(query, context, stopwords)
        latency = time.perf_counter() - start
        return self._finish_verdict(score, latency, estimated_flops=0.0)
