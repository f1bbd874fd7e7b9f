import json
from pathlib import Path

import pytest

from groundgate.corpus import make_pair
from groundgate.judge import (
    PromptTemplate,
    load_prompt_bank,
    render_prompt,
    templates_for_domain,
    validate_bank,
)
from groundgate.errors import ValidationError

GOLDEN = Path(__file__).parent / "data" / "prompt_bank_golden.json"


def test_bank_holds_exactly_20_qa_and_20_ir():
    bank = load_prompt_bank()
    assert sum(1 for t in bank if t.domain == "qa") == 20
    assert sum(1 for t in bank if t.domain == "ir") == 20
    assert len(bank) == 40


def test_bank_byte_matches_golden_file():
    golden = json.loads(GOLDEN.read_text("utf-8"))["templates"]
    bank = load_prompt_bank()
    assert len(golden) == len(bank) == 40
    for expected, template in zip(golden, bank):
        assert template.id == expected["id"]
        assert template.domain == expected["domain"]
        assert template.text == expected["text"], template.id


def test_first_qa_template_text():
    bank = {t.id: t for t in load_prompt_bank()}
    assert bank["qa-01"].text == (
        "Can you answer the question using the given context? "
        "Reply with 'yes' or 'no'.")


def test_first_ir_template_text():
    bank = {t.id: t for t in load_prompt_bank()}
    assert bank["ir-01"].text == (
        "Does the context provide relevant information to answer the query? "
        "Respond with 'yes' or 'no'.")


def test_every_template_demands_yes_no():
    for template in load_prompt_bank():
        lowered = template.text.lower()
        assert "yes" in lowered and "no" in lowered


def test_validate_bank_rejects_wrong_counts():
    bank = load_prompt_bank()[:-1]
    with pytest.raises(ValidationError):
        validate_bank(bank)


def test_render_order_instruction_context_query():
    template = templates_for_domain("qa")[0]
    pair = make_pair(id="p", query="Which river?", context="The Alde flows north.",
                     label="grounded", source="synthetic")
    payload = render_prompt(template, pair)
    content = payload["messages"][0]["content"]
    assert content == (
        f"{template.text}\n\nContext: The Alde flows north.\n\nQuestion: Which river?")
    assert payload["temperature"] == 0.0
    assert payload["max_tokens"] <= 16
    assert len(payload["messages"]) == 1


def test_ir_templates_label_query_line_query():
    template = templates_for_domain("ir")[0]
    payload = render_prompt(template, ("covid vaccines", "A study of vaccines."))
    assert "\n\nQuery: covid vaccines" in payload["messages"][0]["content"]
    assert "Question:" not in payload["messages"][0]["content"]


def test_render_is_pure():
    template = templates_for_domain("qa")[3]
    pair = ("a question", "a context")
    assert render_prompt(template, pair) == render_prompt(template, pair)


def test_unknown_domain_rejected():
    with pytest.raises(ValidationError):
        templates_for_domain("code")


def test_duplicate_ids_rejected():
    bank = load_prompt_bank()
    bank[1] = PromptTemplate(id=bank[0].id, domain=bank[1].domain, text=bank[1].text)
    with pytest.raises(ValidationError):
        validate_bank(bank)
