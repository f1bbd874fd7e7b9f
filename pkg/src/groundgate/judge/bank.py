"""The zero-shot judging prompt bank: 20 QA + 20 IR instruction templates.

Template texts are data, shipped in ``data/prompt_bank.json`` and frozen by a
golden-file test; code never mutates them. Each template demands a bare yes/no
reply so verdict parsing stays mechanical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..corpus.records import QueryContextPair
from ..errors import ValidationError

DOMAINS = ("qa", "ir")
EXPECTED_PER_DOMAIN = 20

# The query line is labeled per domain: QA instructions talk about "the
# question", IR instructions about "the query".
_QUERY_LABEL = {"qa": "Question", "ir": "Query"}

JUDGE_MAX_TOKENS = 8
JUDGE_TEMPERATURE = 0.0


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    domain: str
    text: str


def load_prompt_bank() -> list[PromptTemplate]:
    raw = resources.files("groundgate.data").joinpath("prompt_bank.json").read_text("utf-8")
    payload = json.loads(raw)
    templates = [PromptTemplate(**t) for t in payload["templates"]]
    validate_bank(templates)
    return templates


def validate_bank(templates: list[PromptTemplate]) -> None:
    for domain in DOMAINS:
        count = sum(1 for t in templates if t.domain == domain)
        if count != EXPECTED_PER_DOMAIN:
            raise ValidationError(
                f"prompt bank must hold {EXPECTED_PER_DOMAIN} {domain} templates, found {count}")
    ids = [t.id for t in templates]
    if len(set(ids)) != len(ids):
        raise ValidationError("prompt bank contains duplicate template ids")
    for template in templates:
        lowered = template.text.lower()
        if "yes" not in lowered or "no" not in lowered:
            raise ValidationError(f"template {template.id} does not demand a yes/no reply")


def templates_for_domain(domain: str,
                         templates: list[PromptTemplate] | None = None) -> list[PromptTemplate]:
    if domain not in DOMAINS:
        raise ValidationError(f"unknown template domain {domain!r}")
    templates = templates if templates is not None else load_prompt_bank()
    return [t for t in templates if t.domain == domain]


def render_prompt(template: PromptTemplate, pair: QueryContextPair | tuple[str, str]) -> dict:
    """Build the chat-completion payload for one (template, pair) judgment.

    Content order is fixed: instruction, labeled context, labeled query —
    nothing else. Generation is pinned to temperature 0 and a tiny token cap so
    judging is deterministic and cheap.
    """
    if isinstance(pair, QueryContextPair):
        query, context = pair.query, pair.context
    else:
        query, context = pair
    label = _QUERY_LABEL[template.domain]
    content = f"{template.text}\n\nContext: {context}\n\n{label}: {query}"
    return {
        "messages": [{"role": "user", "content": content}],
        "temperature": JUDGE_TEMPERATURE,
        "max_tokens": JUDGE_MAX_TOKENS,
    }
