"""NewsQA adapter: label from the consensus annotation, full article as context.

Input is the combined release layout: ``{"data": [{"storyId" | "key", "text",
"questions": [{"q", "consensus": {...}}]}]}``. The consensus object decides the
label: an answer span means grounded; ``noAnswer`` or ``badQuestion`` means
ungrounded. Questions with no usable annotation are skipped and counted — the
source data has annotation gaps, and we never guess a label.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import ParseError
from .records import GROUNDED, UNGROUNDED, QueryContextPair, SkipReport, make_pair


def _consensus_label(consensus: Any) -> str | None:
    """Map a consensus object to a label, or None when it decides nothing."""
    if not isinstance(consensus, dict) or not consensus:
        return None
    if consensus.get("noAnswer") or consensus.get("badQuestion"):
        return UNGROUNDED
    if "s" in consensus and "e" in consensus:
        return GROUNDED
    return None


def parse_newsqa(document: dict[str, Any],
                 split: str = "train") -> tuple[list[QueryContextPair], SkipReport]:
    """Convert a combined NewsQA document into labeled pairs plus a skip report.

    Conservation: ``report.read == len(pairs) + report.skipped``.
    """
    if not isinstance(document, dict) or "data" not in document:
        raise ParseError("not a NewsQA document: missing top-level 'data'")

    pairs: list[QueryContextPair] = []
    report = SkipReport()
    for story in document["data"]:
        story_id = story.get("storyId") or story.get("key")
        if not story_id:
            raise ParseError("story without a 'storyId'")
        article = story.get("text")
        if not isinstance(article, str):
            raise ParseError(f"story {story_id!r}: missing article 'text'")
        for idx, question in enumerate(story.get("questions", [])):
            report.read += 1
            label = _consensus_label(question.get("consensus"))
            if label is None:
                report.skip("no_answerability_annotation")
                continue
            qtext = question.get("q", "")
            if not isinstance(qtext, str) or not qtext.strip():
                report.skip("empty_question")
                continue
            if not article.strip():
                report.skip("empty_article")
                continue
            pairs.append(make_pair(
                id=f"{story_id}:{idx}",
                query=qtext,
                context=article,
                label=label,
                source="newsqa",
                split=split,
            ))
            report.emitted += 1
    return pairs, report


def load_newsqa(path: str | Path,
                split: str = "train") -> tuple[list[QueryContextPair], SkipReport]:
    with open(path, encoding="utf-8") as fh:
        return parse_newsqa(json.load(fh), split=split)
