"""SQuAD v2 adapter: one pair per question, grounded iff the question is answerable.

Input is the official nested layout: ``{"data": [{"paragraphs": [{"context": ...,
"qas": [{"id", "question", "is_impossible", ...}]}]}]}``. The per-question
``is_impossible`` flag is the label authority; a record without it is a hard
error — the label is never defaulted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import ParseError
from .records import GROUNDED, UNGROUNDED, QueryContextPair, make_pair


def parse_squad_v2(document: dict[str, Any], split: str = "train") -> list[QueryContextPair]:
    """Convert a parsed SQuAD v2 document into labeled pairs.

    The enclosing paragraph text is the context, verbatim (modulo canonical
    normalization). Label is the negation of ``is_impossible``.
    """
    if not isinstance(document, dict) or "data" not in document:
        raise ParseError("not a SQuAD v2 document: missing top-level 'data'")

    pairs: list[QueryContextPair] = []
    for article in document["data"]:
        for paragraph in article.get("paragraphs", []):
            context = paragraph.get("context")
            if not isinstance(context, str):
                raise ParseError("paragraph without a 'context' string")
            for qa in paragraph.get("qas", []):
                qid = qa.get("id")
                if not qid:
                    raise ParseError("question entry without an 'id'")
                question = qa.get("question")
                if not isinstance(question, str) or not question.strip():
                    raise ParseError(f"question {qid!r}: missing or empty 'question'")
                if "is_impossible" not in qa:
                    raise ParseError(f"question {qid!r}: missing 'is_impossible' flag")
                impossible = qa["is_impossible"]
                if not isinstance(impossible, bool):
                    raise ParseError(f"question {qid!r}: 'is_impossible' is not a boolean")
                try:
                    pairs.append(make_pair(
                        id=str(qid),
                        query=question,
                        context=context,
                        label=UNGROUNDED if impossible else GROUNDED,
                        source="squad_v2",
                        split=split,
                    ))
                except ValueError as exc:
                    raise ParseError(f"question {qid!r}: {exc}") from exc
    return pairs


def load_squad_v2(path: str | Path, split: str = "train") -> list[QueryContextPair]:
    with open(path, encoding="utf-8") as fh:
        return parse_squad_v2(json.load(fh), split=split)
