"""Shared fixtures: raw-format dataset documents written the way the sources ship them."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from groundgate.corpus import build_squad_style_document


@pytest.fixture()
def squad_document() -> dict:
    """Small official-layout SQuAD v2 document with known flags."""
    return {
        "version": "v2.0",
        "data": [
            {
                "title": "Alpha",
                "paragraphs": [
                    {
                        "context": "The river Alde flows through the town of Snape. "
                                   "It reaches the sea at Orford Ness.",
                        "qas": [
                            {"id": "q1", "question": "Which river flows through Snape?",
                             "is_impossible": False,
                             "answers": [{"text": "Alde", "answer_start": 10}]},
                            {"id": "q2", "question": "Which mountain overlooks Snape?",
                             "is_impossible": True, "answers": []},
                        ],
                    },
                    {
                        "context": "Granite is an igneous rock composed mainly of quartz "
                                   "and feldspar.",
                        "qas": [
                            {"id": "q3", "question": "What is granite composed of?",
                             "is_impossible": False,
                             "answers": [{"text": "quartz and feldspar", "answer_start": 46}]},
                        ],
                    },
                ],
            }
        ],
    }


@pytest.fixture()
def newsqa_document() -> dict:
    """Combined-release layout with span, noAnswer, badQuestion and a gap."""
    article = ("The port reopened on Tuesday after a three-day closure. Officials said "
               "dredging work had finished ahead of schedule and ferry service resumed "
               "at noon.")
    return {
        "version": "1",
        "data": [
            {
                "storyId": "story-001",
                "text": article,
                "questions": [
                    {"q": "When did the port reopen?", "consensus": {"s": 23, "e": 30}},
                    {"q": "Who owns the port?", "consensus": {"noAnswer": True}},
                    {"q": "is it?", "consensus": {"badQuestion": True}},
                    {"q": "What finished early?", "consensus": {"s": 57, "e": 70}},
                    {"q": "Unannotated question?"},
                ],
            }
        ],
    }


def write_beir_fixture(root: Path, n_queries: int = 5, n_docs: int = 40,
                       seed: int = 7) -> dict[str, Path]:
    """BEIR-layout files: corpus.jsonl, queries.jsonl, qrels.tsv."""
    rng = random.Random(seed)
    root.mkdir(parents=True, exist_ok=True)
    corpus_path = root / "corpus.jsonl"
    queries_path = root / "queries.jsonl"
    qrels_path = root / "qrels.tsv"

    with open(corpus_path, "w", encoding="utf-8") as fh:
        for d in range(n_docs):
            fh.write(json.dumps({
                "_id": f"doc{d:03d}",
                "title": f"Document {d}",
                "text": f"Body text of document {d} about topic {d % 7}.",
            }) + "\n")

    with open(queries_path, "w", encoding="utf-8") as fh:
        for q in range(n_queries):
            fh.write(json.dumps({
                "_id": f"query{q:02d}",
                "text": f"What does topic {q} say about subject {q}?",
            }) + "\n")

    with open(qrels_path, "w", encoding="utf-8") as fh:
        fh.write("query-id\tcorpus-id\tscore\n")
        for q in range(n_queries):
            docs = rng.sample(range(n_docs), 8)
            for rank, d in enumerate(docs):
                grade = 2 if rank < 2 else (1 if rank < 4 else 0)
                fh.write(f"query{q:02d}\tdoc{d:03d}\t{grade}\n")

    return {"corpus": corpus_path, "queries": queries_path, "qrels": qrels_path}


@pytest.fixture()
def beir_files(tmp_path: Path) -> dict[str, Path]:
    return write_beir_fixture(tmp_path / "beir")


@pytest.fixture(scope="session")
def squad_dev_file(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """The official SQuAD v2 dev file when available, else a generated stand-in
    in the identical layout (see GROUNDGATE_SQUAD_DEV in the README)."""
    import os

    override = os.environ.get("GROUNDGATE_SQUAD_DEV", "")
    if override and Path(override).exists():
        return Path(override)
    path = tmp_path_factory.mktemp("squad") / "dev-v2.0.json"
    document = build_squad_style_document(n_questions=300, seed=13)
    path.write_text(json.dumps(document, ensure_ascii=False), encoding="utf-8")
    return path
