"""Canonical corpus file format: UTF-8 JSON lines, one pair per line.

Each line is a flat object with exactly the fields
``{id, query, context, label, source, split}``; lines are sorted by id so
regenerated corpora diff cleanly. This layout is the contract other components
(training, serving) consume — see README "Canonical corpus file".
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import CorpusFormatError
from .records import (
    FIELD_ORDER,
    LABELS,
    QueryContextPair,
    check_unique_ids,
    validate_pair,
)


def pair_to_json(pair: QueryContextPair) -> str:
    record = {field: getattr(pair, field) for field in FIELD_ORDER}
    return json.dumps(record, ensure_ascii=False)


def write_pairs(pairs: list[QueryContextPair], path: str | Path) -> None:
    """Validate, sort by id, and write the canonical file."""
    for pair in pairs:
        validate_pair(pair)
    check_unique_ids(pairs)
    ordered = sorted(pairs, key=lambda p: p.id)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in ordered:
            fh.write(pair_to_json(pair) + "\n")


def read_pairs(path: str | Path) -> list[QueryContextPair]:
    """Read a canonical file back, rejecting anything off-contract."""
    pairs: list[QueryContextPair] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError("invalid JSON", line_no) from exc
            if not isinstance(record, dict):
                raise CorpusFormatError("record is not an object", line_no)
            missing = [f for f in FIELD_ORDER if f not in record]
            extra = [f for f in record if f not in FIELD_ORDER]
            if missing or extra:
                raise CorpusFormatError(
                    f"fields off-contract (missing={missing}, extra={extra})", line_no)
            if record["label"] not in LABELS:
                raise CorpusFormatError(
                    f"invalid label token {record['label']!r}", line_no)
            pair = QueryContextPair(**record)
            try:
                validate_pair(pair)
            except ValueError as exc:
                raise CorpusFormatError(str(exc), line_no) from exc
            if pair.id in seen:
                raise CorpusFormatError(f"duplicate id {pair.id!r}", line_no)
            seen.add(pair.id)
            pairs.append(pair)
    return pairs
