"""Zero-shot groundedness judging through chat-completion endpoints."""

from .bank import (
    DOMAINS,
    EXPECTED_PER_DOMAIN,
    PromptTemplate,
    load_prompt_bank,
    render_prompt,
    templates_for_domain,
    validate_bank,
)
from .client import JUDGE_API_KEY_ENV, ChatEndpoint, JudgeClient, JudgeReply
from .parsing import NO, UNPARSEABLE, VERDICTS, YES, parse_verdict
from .sweep import JudgeResponse, SweepPolicy, aggregate_log, sweep

__all__ = [
    "ChatEndpoint",
    "DOMAINS",
    "EXPECTED_PER_DOMAIN",
    "JUDGE_API_KEY_ENV",
    "JudgeClient",
    "JudgeReply",
    "JudgeResponse",
    "NO",
    "PromptTemplate",
    "SweepPolicy",
    "UNPARSEABLE",
    "VERDICTS",
    "YES",
    "aggregate_log",
    "load_prompt_bank",
    "parse_verdict",
    "render_prompt",
    "sweep",
    "templates_for_domain",
    "validate_bank",
]
