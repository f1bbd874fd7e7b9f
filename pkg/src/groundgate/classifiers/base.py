"""Shared classify contract: verdict record, configuration, and input validation.

Every backend is a scikit-learn style estimator (``BaseEstimator`` with
``fit``/``predict``/``predict_proba``/``get_params``) over (query, context)
pairs, plus a richer ``classify`` method that returns a ``GroundednessVerdict``
with cost and latency metadata. Backends are interchangeable: downstream code
(gateway, eval harness) depends only on the verdict record.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ..corpus.records import GROUNDED, UNGROUNDED, QueryContextPair
from ..errors import ValidationError
from ..text import normalize_text

CLASS_ORDER = (GROUNDED, UNGROUNDED)  # predict_proba column order == self.classes_


@dataclass(frozen=True)
class GroundednessVerdict:
    """One backend's decision for one pair.

    ``score`` is the confidence that the label should be grounded; the label is
    always ``score >= threshold`` for the threshold the backend used.
    ``estimated_flops`` is 0 only for the lexical baseline.
    """

    label: str
    score: float
    backend_id: str
    latency_s: float
    estimated_flops: float

    def to_dict(self) -> dict:
        return asdict(self)


def validate_verdict(verdict: GroundednessVerdict, threshold: float) -> None:
    if not 0.0 <= verdict.score <= 1.0:
        raise ValidationError(f"verdict score {verdict.score} outside [0, 1]")
    expected = GROUNDED if verdict.score >= threshold else UNGROUNDED
    if verdict.label != expected:
        raise ValidationError(
            f"verdict label {verdict.label!r} inconsistent with score "
            f"{verdict.score} at threshold {threshold}")
    if verdict.estimated_flops < 0:
        raise ValidationError("estimated_flops must be non-negative")


@dataclass
class ClassifierConfig:
    """Backend selection plus the knobs every backend shares."""

    backend: str = "lexical"  # lexical | endpoint | embedded
    threshold: float = 0.5
    max_sequence_length: int = 512
    separator: str = "[SEP]"
    endpoint_url: str | None = None
    artifact_dir: str | None = None

    def __post_init__(self) -> None:
        if self.backend not in ("lexical", "endpoint", "embedded"):
            raise ValidationError(f"unknown backend {self.backend!r}")
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError(f"threshold must be inside (0, 1), got {self.threshold}")
        if self.max_sequence_length < 16:
            raise ValidationError(
                f"max_sequence_length must be >= 16, got {self.max_sequence_length}")
        if self.backend == "endpoint" and not self.endpoint_url:
            raise ValidationError("endpoint backend requires endpoint_url")
        if self.backend == "embedded" and not self.artifact_dir:
            raise ValidationError("embedded backend requires artifact_dir")


def threshold_decide(score: float, threshold: float) -> str:
    """Grounded iff score >= threshold; the boundary is inclusive by contract."""
    if not 0.0 <= score <= 1.0:
        raise ValidationError(f"score {score} outside [0, 1]")
    if not 0.0 < threshold < 1.0:
        raise ValidationError(f"threshold {threshold} outside (0, 1)")
    return GROUNDED if score >= threshold else UNGROUNDED


def check_pair_inputs(X) -> list[tuple[str, str]]:
    """Coerce estimator input to a list of (query, context) string tuples.

    Accepts a sequence of 2-tuples/lists, a 2-column array, or
    ``QueryContextPair`` records. Texts are canonically normalized and must be
    non-empty afterwards.
    """
    if isinstance(X, (str, bytes)):
        raise ValidationError("X must be a sequence of (query, context) pairs, not a string")
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValidationError(f"array input must have shape (n, 2), got {X.shape}")
        X = X.tolist()
    out: list[tuple[str, str]] = []
    for i, row in enumerate(X):
        if isinstance(row, QueryContextPair):
            query, context = row.query, row.context
        else:
            try:
                query, context = row
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"row {i}: expected (query, context), got {row!r}") from exc
        if not isinstance(query, str) or not isinstance(context, str):
            raise ValidationError(f"row {i}: query and context must be strings")
        query, context = normalize_text(query), normalize_text(context)
        if not query:
            raise ValidationError(f"row {i}: query empty after normalization")
        if not context:
            raise ValidationError(f"row {i}: context empty after normalization")
        out.append((query, context))
    return out


class PairClassifier(BaseEstimator, ClassifierMixin):
    """Base estimator over (query, context) pairs.

    Subclasses implement ``score_pairs`` (grounded-confidence in [0, 1] per
    pair) and the identity properties; ``predict``/``predict_proba``/
    ``classify`` derive from it. These backends carry no learned state in-
    process, so ``fit`` only validates parameters — it exists for pipeline
    compatibility.
    """

    threshold: float = 0.5

    def fit(self, X=None, y=None):
        self._validate_params()
        if X is not None:
            check_pair_inputs(X)
        self.classes_ = np.array(CLASS_ORDER)
        return self

    def _validate_params(self) -> None:
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError(f"threshold must be inside (0, 1), got {self.threshold}")

    # -- identity -----------------------------------------------------------
    @property
    def backend_id(self) -> str:
        raise NotImplementedError

    @property
    def artifact_version(self) -> str:
        """Version of whatever fixed artifact scores depend on (cache keying)."""
        raise NotImplementedError

    # -- scoring ------------------------------------------------------------
    def score_pairs(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        self._validate_params()
        scores = self.score_pairs(X)
        return np.where(scores >= self.threshold, GROUNDED, UNGROUNDED)

    def predict_proba(self, X) -> np.ndarray:
        """Columns follow CLASS_ORDER: [P(grounded), P(ungrounded)]."""
        scores = self.score_pairs(X)
        return np.column_stack([scores, 1.0 - scores])

    def classify(self, pair: QueryContextPair | tuple[str, str]) -> GroundednessVerdict:
        """Full verdict for one pair, including latency and FLOP metadata."""
        raise NotImplementedError

    def _finish_verdict(self, score: float, latency_s: float,
                        estimated_flops: float) -> GroundednessVerdict:
        verdict = GroundednessVerdict(
            label=threshold_decide(score, self.threshold),
            score=float(score),
            backend_id=self.backend_id,
            latency_s=latency_s,
            estimated_flops=estimated_flops,
        )
        validate_verdict(verdict, self.threshold)
        return verdict


def as_single_pair(pair: QueryContextPair | tuple[str, str] | Sequence[str]) -> tuple[str, str]:
    return check_pair_inputs([pair])[0]


def iter_pair_batches(pairs: Iterable, batch_size: int):
    batch = []
    for pair in pairs:
        batch.append(pair)
        if len(batch) >= batch_size:
            yield batch
            batch = []
    if batch:
        yield batch
