"""Canonical text handling used by every module that touches raw text.

Normalization is Unicode NFC and newline-preserving: runs of spaces/tabs collapse
to one space, lines are stripped, blank leading/trailing lines are dropped, but
interior line structure survives. Corpora never lowercase; casefolding is a
backend concern.
"""

from __future__ import annotations

import re
import string
import unicodedata

_SPACE_RUN = re.compile(r"[ \t\f\v]+")

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize_text(text: str) -> str:
    """Return the canonical form of a query or context string."""
    text = unicodedata.normalize("NFC", text)
    lines = [_SPACE_RUN.sub(" ", line).strip() for line in text.split("\n")]
    return "\n".join(lines).strip("\n").strip()


def squash_whitespace(text: str) -> str:
    """Collapse ALL whitespace (newlines included) to single spaces.

    Used for content-addressed keys where any whitespace-only difference must
    not change identity.
    """
    return " ".join(text.split())


def simple_tokens(text: str) -> list[str]:
    """Whitespace tokens of a normalized string; the package's token unit for budgets."""
    return text.split()


def bag_tokens(text: str, stopwords: frozenset[str] = frozenset()) -> set[str]:
    """Lowercased, punctuation-stripped, stopword-filtered token set."""
    lowered = text.lower().translate(_PUNCT_TABLE)
    return {tok for tok in lowered.split() if tok and tok not in stopwords}
