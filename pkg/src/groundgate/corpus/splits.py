"""Label-stratified, seed-deterministic train/dev/test partitioning."""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Iterable, Sequence

from ..errors import ValidationError
from .records import QueryContextPair

SPLIT_NAMES = ("train", "dev", "test")


def _allocate(n: int, ratios: Sequence[float]) -> list[int]:
    """Largest-remainder apportionment of n items across the ratios."""
    exact = [n * r for r in ratios]
    counts = [int(x) for x in exact]
    shortfall = n - sum(counts)
    remainders = sorted(range(len(ratios)), key=lambda i: (exact[i] - counts[i], -i), reverse=True)
    for i in remainders[:shortfall]:
        counts[i] += 1
    return counts


def stratified_split(pairs: Iterable[QueryContextPair], ratios: Sequence[float],
                     seed: int) -> dict[str, list[QueryContextPair]]:
    """Partition pairs into train/dev/test, preserving label proportions.

    Deterministic in (pair multiset, ratios, seed): pairs are id-sorted before
    the seeded shuffle so caller ordering cannot leak into the result. Output
    lists are id-sorted and every pair is re-tagged with its split name.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValidationError("cannot split an empty pair list")
    if len(ratios) != len(SPLIT_NAMES):
        raise ValidationError(f"expected {len(SPLIT_NAMES)} ratios, got {len(ratios)}")
    if any(r < 0 for r in ratios):
        raise ValidationError("ratios must be non-negative")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValidationError(f"ratios must sum to 1, got {sum(ratios)!r}")

    by_label: dict[str, list[QueryContextPair]] = defaultdict(list)
    for pair in sorted(pairs, key=lambda p: p.id):
        by_label[pair.label].append(pair)

    out: dict[str, list[QueryContextPair]] = {name: [] for name in SPLIT_NAMES}
    for label in sorted(by_label):
        group = by_label[label]
        rng = random.Random(f"{seed}:{label}")
        rng.shuffle(group)
        counts = _allocate(len(group), ratios)
        pos = 0
        for name, count in zip(SPLIT_NAMES, counts):
            out[name].extend(p.with_split(name) for p in group[pos:pos + count])
            pos += count

    for name in SPLIT_NAMES:
        out[name].sort(key=lambda p: p.id)
    return out
