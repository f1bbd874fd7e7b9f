"""Accuracy and confusion counts over prediction/gold label maps.

Grounded is the positive class. Both functions demand identical id sets —
silently scoring a partial prediction set is how evaluation bugs hide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..corpus.records import GROUNDED, LABELS
from ..errors import ValidationError

LabelMap = Mapping[str, str]


def _as_label_map(labels: LabelMap | Sequence[tuple[str, str]], name: str) -> dict[str, str]:
    mapping = dict(labels)
    if not mapping:
        raise ValidationError(f"{name} is empty; accuracy over nothing is undefined")
    for pair_id, label in mapping.items():
        if label not in LABELS:
            raise ValidationError(f"{name}[{pair_id!r}]: invalid label {label!r}")
    return mapping


def _check_same_ids(predictions: dict[str, str], gold: dict[str, str]) -> None:
    missing = sorted(set(gold) - set(predictions))
    unexpected = sorted(set(predictions) - set(gold))
    if missing or unexpected:
        raise ValidationError(
            f"prediction/gold id mismatch: missing={missing[:5]} unexpected={unexpected[:5]}")


def accuracy(predictions: LabelMap | Sequence[tuple[str, str]],
             gold: LabelMap | Sequence[tuple[str, str]]) -> float:
    """Fraction of ids whose predicted label equals gold."""
    pred = _as_label_map(predictions, "predictions")
    truth = _as_label_map(gold, "gold")
    _check_same_ids(pred, truth)
    correct = sum(1 for pair_id, label in truth.items() if pred[pair_id] == label)
    return correct / len(truth)


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 counts with grounded as the positive class."""

    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total

    def to_dict(self) -> dict:
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}


def confusion(predictions: LabelMap | Sequence[tuple[str, str]],
              gold: LabelMap | Sequence[tuple[str, str]]) -> ConfusionMatrix:
    pred = _as_label_map(predictions, "predictions")
    truth = _as_label_map(gold, "gold")
    _check_same_ids(pred, truth)
    tp = tn = fp = fn = 0
    for pair_id, gold_label in truth.items():
        predicted_grounded = pred[pair_id] == GROUNDED
        actually_grounded = gold_label == GROUNDED
        if predicted_grounded and actually_grounded:
            tp += 1
        elif not predicted_grounded and not actually_grounded:
            tn += 1
        elif predicted_grounded:
            fp += 1
        else:
            fn += 1
    return ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)
