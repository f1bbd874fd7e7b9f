"""Canonical corpus file access and batch encoding.

trainkit consumes exactly the canonical corpus format produced by the corpus
tooling: UTF-8 JSON lines with fields {id, query, context, label, source,
split}, labels "grounded"/"ungrounded". The reader here is deliberately
self-contained — the file format is the interface between the packages.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path

import torch

from .vocab import Vocab

GROUNDED = "grounded"
UNGROUNDED = "ungrounded"
REQUIRED_FIELDS = ("id", "query", "context", "label", "source", "split")


@dataclass(frozen=True)
class Example:
    id: str
    query: str
    context: str
    label: str


def read_corpus(path: str | Path) -> list[Example]:
    examples: list[Example] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            record = json.loads(line)
            missing = [f for f in REQUIRED_FIELDS if f not in record]
            if missing:
                raise ValueError(f"{path}:{line_no}: missing fields {missing}")
            if record["label"] not in (GROUNDED, UNGROUNDED):
                raise ValueError(f"{path}:{line_no}: bad label {record['label']!r}")
            examples.append(Example(id=record["id"], query=record["query"],
                                    context=record["context"], label=record["label"]))
    if not examples:
        raise ValueError(f"{path}: empty corpus")
    return examples


def corpus_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def encode_example(query: str, context: str, vocab: Vocab,
                   max_sequence_length: int) -> list[int] | None:
    """[CLS] context [SEP] query, with the context tail truncated to fit.

    Returns None when the query alone cannot fit the budget — training skips
    such rows, serving rejects them.
    """
    query_ids = vocab.encode(query)
    budget = max_sequence_length - 2 - len(query_ids)
    if budget < 0:
        return None
    context_ids = vocab.encode(context)[:budget]
    return [vocab.cls_id] + context_ids + [vocab.sep_id] + query_ids


def collate(sequences: list[list[int]], labels: list[int],
            pad_id: int) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    width = max(len(s) for s in sequences)
    input_ids = torch.full((len(sequences), width), pad_id, dtype=torch.long)
    attention_mask = torch.zeros((len(sequences), width), dtype=torch.long)
    for row, seq in enumerate(sequences):
        input_ids[row, :len(seq)] = torch.tensor(seq, dtype=torch.long)
        attention_mask[row, :len(seq)] = 1
    return input_ids, attention_mask, torch.tensor(labels, dtype=torch.long)


class BatchIterator:
    """Seeded, optionally shuffled batches over encoded examples."""

    def __init__(self, examples: list[Example], vocab: Vocab,
                 max_sequence_length: int, batch_size: int):
        self.vocab = vocab
        self.batch_size = batch_size
        self.encoded: list[tuple[list[int], int]] = []
        self.skipped = 0
        for example in examples:
            ids = encode_example(example.query, example.context, vocab,
                                 max_sequence_length)
            if ids is None:
                self.skipped += 1
                continue
            self.encoded.append((ids, 1 if example.label == GROUNDED else 0))

    def __len__(self) -> int:
        return len(self.encoded)

    def batches(self, rng: random.Random | None = None):
        order = list(range(len(self.encoded)))
        if rng is not None:
            rng.shuffle(order)
        for start in range(0, len(order), self.batch_size):
            chunk = [self.encoded[i] for i in order[start:start + self.batch_size]]
            yield collate([c[0] for c in chunk], [c[1] for c in chunk],
                          self.vocab.pad_id)
