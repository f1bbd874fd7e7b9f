"""BEIR-format IR adapter: qrels above a grade threshold become grounded pairs,
with seeded negative sampling for the ungrounded side.

Files follow the benchmark's layout: ``corpus.jsonl`` (``_id``, ``title``,
``text``), ``queries.jsonl`` (``_id``, ``text``) and a qrels TSV
(``query-id<TAB>corpus-id<TAB>score``, optional header). For each query, every
judged document at ``grade >= relevance_threshold`` yields a grounded pair;
``ceil(negative_ratio * grounded_count)`` ungrounded pairs are then sampled
without replacement from that query's below-threshold judgments, topping up from
unjudged documents when the judged pool runs dry. Sampling is a pure function of
the descriptor seed, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from ..errors import ParseError, ValidationError
from .records import GROUNDED, UNGROUNDED, QueryContextPair, make_pair


@dataclass
class DatasetDescriptor:
    """Where an IR dataset lives and how to sample it."""

    source: str
    corpus_path: str | Path
    queries_path: str | Path
    qrels_path: str | Path
    negative_ratio: float = 1.0
    relevance_threshold: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.negative_ratio <= 0:
            raise ValidationError(f"negative_ratio must be > 0, got {self.negative_ratio}")
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")


def _read_jsonl_texts(path: str | Path, kind: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{kind} file line {line_no}: invalid JSON") from exc
            _id = record.get("_id")
            if _id is None:
                raise ParseError(f"{kind} file line {line_no}: missing '_id'")
            text = record.get("text", "") or ""
            title = record.get("title", "") or ""
            out[str(_id)] = f"{title}\n{text}" if title else text
    return out


def _read_qrels(path: str | Path) -> list[tuple[str, str, int]]:
    rows: list[tuple[str, str, int]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise ParseError(f"qrels line {line_no}: expected 3 tab-separated columns")
            qid, did, grade = parts[0].strip(), parts[1].strip(), parts[2].strip()
            if line_no == 1 and not grade.lstrip("-").isdigit():
                continue  # header row
            try:
                rows.append((qid, did, int(grade)))
            except ValueError as exc:
                raise ParseError(f"qrels line {line_no}: non-integer grade {grade!r}") from exc
    return rows


def parse_beir(descriptor: DatasetDescriptor, split: str = "test") -> list[QueryContextPair]:
    """Build a balanced-by-construction groundedness corpus from IR judgments."""
    corpus = _read_jsonl_texts(descriptor.corpus_path, "corpus")
    queries = _read_jsonl_texts(descriptor.queries_path, "queries")
    qrels = _read_qrels(descriptor.qrels_path)

    orphan_queries = sorted({q for q, _, _ in qrels if q not in queries})
    orphan_docs = sorted({d for _, d, _ in qrels if d not in corpus})
    if orphan_queries or orphan_docs:
        raise ParseError(
            "qrels reference unknown ids: "
            f"queries={orphan_queries[:10]} docs={orphan_docs[:10]}"
        )

    judged: dict[str, dict[str, int]] = {}
    for qid, did, grade in qrels:
        judged.setdefault(qid, {})[did] = grade

    all_doc_ids = sorted(corpus)
    threshold = descriptor.relevance_threshold
    pairs: list[QueryContextPair] = []

    for qid in sorted(judged):
        grades = judged[qid]
        grounded_docs = sorted(d for d, g in grades.items() if g >= threshold)
        below_docs = sorted(d for d, g in grades.items() if g < threshold)
        for did in grounded_docs:
            pairs.append(make_pair(
                id=f"{descriptor.source}:{qid}:{did}",
                query=queries[qid],
                context=corpus[did],
                label=GROUNDED,
                source=descriptor.source,
                split=split,
            ))

        n_negatives = math.ceil(descriptor.negative_ratio * len(grounded_docs))
        if n_negatives == 0:
            continue
        # String-seeded Random uses sha512 of the seed, stable across runs and platforms.
        rng = random.Random(f"{descriptor.seed}:{qid}")
        picked = rng.sample(below_docs, min(n_negatives, len(below_docs)))
        missing = n_negatives - len(picked)
        if missing > 0:
            unjudged = [d for d in all_doc_ids if d not in grades]
            picked += rng.sample(unjudged, min(missing, len(unjudged)))
        for did in picked:
            pairs.append(make_pair(
                id=f"{descriptor.source}:{qid}:{did}",
                query=queries[qid],
                context=corpus[did],
                label=UNGROUNDED,
                source=descriptor.source,
                split=split,
            ))

    return pairs
