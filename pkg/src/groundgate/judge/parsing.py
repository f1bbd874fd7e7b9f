"""Strict yes/no verdict extraction from raw judge replies.

Total function: every string maps to YES, NO, or UNPARSEABLE. The rule is
first-alphabetic-token equality — "Yes.", "NO, the context lacks this." parse;
"the answer is yes", "Nope", and "yesterday" do not. Unparseable is a value,
never an error, so scoring policy stays a separate decision.
"""

from __future__ import annotations

import re

YES = "yes"
NO = "no"
UNPARSEABLE = "unparseable"

VERDICTS = (YES, NO, UNPARSEABLE)

_FIRST_ALPHA_TOKEN = re.compile(r"[a-z]+")


def parse_verdict(raw: str) -> str:
    """Lowercase, find the first alphabetic token, and match it exactly."""
    match = _FIRST_ALPHA_TOKEN.search(raw.lower())
    if match is None:
        return UNPARSEABLE
    token = match.group(0)
    if token == YES:
        return YES
    if token == NO:
        return NO
    return UNPARSEABLE
