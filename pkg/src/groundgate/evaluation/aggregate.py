"""Seed aggregation: mean and sample standard deviation across evaluation runs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import ValidationError
from .metrics import ConfusionMatrix

DEFAULT_SEEDS = (0, 1, 2, 3, 4)


def aggregate_seeds(accuracies: Sequence[float]) -> tuple[float, float]:
    """(arithmetic mean, sample std with n-1 denominator; 0.0 for n == 1)."""
    if not accuracies:
        raise ValidationError("cannot aggregate an empty accuracy list")
    n = len(accuracies)
    mean = sum(accuracies) / n
    if n == 1:
        return mean, 0.0
    variance = sum((a - mean) ** 2 for a in accuracies) / (n - 1)
    return mean, math.sqrt(variance)


@dataclass(frozen=True)
class EvalRun:
    """One backend pass over one corpus with one seed."""

    corpus_id: str
    backend_id: str
    seed: int
    predictions: tuple[tuple[str, str], ...]  # (pair id, predicted label)
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "corpus_id": self.corpus_id,
            "backend_id": self.backend_id,
            "seed": self.seed,
            "accuracy": self.accuracy,
            "predictions": [list(p) for p in self.predictions],
        }


@dataclass
class AggregateReport:
    """Per-seed accuracies rolled up, plus confusion totals over all runs."""

    corpus_id: str
    backend_id: str
    seeds: list[int]
    accuracies: list[float]
    mean: float
    std: float
    confusion_totals: ConfusionMatrix
    reference: dict | None = None  # optional published-value comparison
    runs: list[EvalRun] = field(default_factory=list)

    def to_dict(self) -> dict:
        record = {
            "corpus_id": self.corpus_id,
            "backend_id": self.backend_id,
            "seeds": self.seeds,
            "accuracies": self.accuracies,
            "mean": self.mean,
            "std": self.std,
            "confusion": self.confusion_totals.to_dict(),
        }
        if self.reference is not None:
            record["reference"] = self.reference
        return record


def build_report(runs: Sequence[EvalRun],
                 confusion_totals: ConfusionMatrix) -> AggregateReport:
    if not runs:
        raise ValidationError("no runs to aggregate")
    corpus_ids = {r.corpus_id for r in runs}
    backend_ids = {r.backend_id for r in runs}
    if len(corpus_ids) != 1 or len(backend_ids) != 1:
        raise ValidationError("aggregate runs must share one corpus and one backend")
    accuracies = [r.accuracy for r in runs]
    mean, std = aggregate_seeds(accuracies)
    return AggregateReport(
        corpus_id=corpus_ids.pop(),
        backend_id=backend_ids.pop(),
        seeds=[r.seed for r in runs],
        accuracies=accuracies,
        mean=mean,
        std=std,
        confusion_totals=confusion_totals,
        runs=list(runs),
    )
