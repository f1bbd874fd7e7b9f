"""The canonical labeled (query, context) record and its invariants."""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable

from ..errors import ValidationError
from ..text import normalize_text

GROUNDED = "grounded"
UNGROUNDED = "ungrounded"
LABELS = frozenset({GROUNDED, UNGROUNDED})

SOURCES = frozenset({"squad_v2", "newsqa", "trec_covid", "touche", "synthetic"})
SPLITS = frozenset({"train", "dev", "test"})

FIELD_ORDER = ("id", "query", "context", "label", "source", "split")


@dataclass(frozen=True)
class QueryContextPair:
    """One labeled groundedness instance: can `context` answer `query`?"""

    id: str
    query: str
    context: str
    label: str
    source: str
    split: str = "train"

    def with_split(self, split: str) -> "QueryContextPair":
        return replace(self, split=split)


def validate_pair(pair: QueryContextPair) -> None:
    """Raise ValidationError unless every record invariant holds."""
    if not pair.id:
        raise ValidationError("pair id must be non-empty")
    if not normalize_text(pair.query):
        raise ValidationError(f"pair {pair.id!r}: query empty after normalization")
    if not normalize_text(pair.context):
        raise ValidationError(f"pair {pair.id!r}: context empty after normalization")
    if pair.label not in LABELS:
        raise ValidationError(f"pair {pair.id!r}: label {pair.label!r} not in {sorted(LABELS)}")
    if pair.source not in SOURCES:
        raise ValidationError(f"pair {pair.id!r}: source {pair.source!r} not in {sorted(SOURCES)}")
    if pair.split not in SPLITS:
        raise ValidationError(f"pair {pair.id!r}: split {pair.split!r} not in {sorted(SPLITS)}")


def make_pair(id: str, query: str, context: str, label: str, source: str,
              split: str = "train") -> QueryContextPair:
    """Normalize texts, build the record, and enforce its invariants."""
    pair = QueryContextPair(
        id=id,
        query=normalize_text(query),
        context=normalize_text(context),
        label=label,
        source=source,
        split=split,
    )
    validate_pair(pair)
    return pair


def check_unique_ids(pairs: Iterable[QueryContextPair]) -> None:
    counts = Counter(p.id for p in pairs)
    dupes = sorted(i for i, n in counts.items() if n > 1)
    if dupes:
        raise ValidationError(f"duplicate pair ids: {dupes[:10]}" + (" ..." if len(dupes) > 10 else ""))


def corpus_digest(pairs: Iterable[QueryContextPair]) -> str:
    """Stable content digest of a pair collection (order-insensitive)."""
    h = hashlib.sha256()
    for p in sorted(pairs, key=lambda x: x.id):
        for field in (p.id, p.query, p.context, p.label, p.source, p.split):
            h.update(field.encode("utf-8"))
            h.update(b"\x1f")
        h.update(b"\x1e")
    return h.hexdigest()


@dataclass
class SkipReport:
    """Record conservation accounting for parsers that may skip source records."""

    read: int = 0
    emitted: int = 0
    reasons: Counter = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.reasons is None:
            self.reasons = Counter()

    @property
    def skipped(self) -> int:
        return sum(self.reasons.values())

    def skip(self, reason: str) -> None:
        self.reasons[reason] += 1
