"""Encoder input assembly: context, separator, query — under a token budget.

The classification sequence is ``<cls-slot> <context tokens> <separator>
<query tokens>``. One leading position is always reserved for the
classification slot. When the budget is exceeded, the context is truncated from
its tail; query tokens are never dropped or reordered. A query that cannot fit
even with an empty context is unclassifiable.
"""

from __future__ import annotations

from ..corpus.records import QueryContextPair
from ..errors import UnclassifiableInput
from ..text import simple_tokens
from .base import ClassifierConfig, as_single_pair

CLS_MARKER = "[CLS]"

# cls slot + separator
_RESERVED_POSITIONS = 2


def truncate_context_tokens(context_tokens: list[str], query_token_count: int,
                            max_sequence_length: int) -> list[str]:
    """Tail-truncate the context so the full sequence fits the budget.

    Raises UnclassifiableInput when the query alone (plus the reserved slot and
    separator) overflows the budget.
    """
    budget = max_sequence_length - _RESERVED_POSITIONS - query_token_count
    if budget < 0:
        raise UnclassifiableInput(
            f"query of {query_token_count} tokens exceeds the sequence budget of "
            f"{max_sequence_length} (needs {query_token_count + _RESERVED_POSITIONS})")
    return context_tokens[:budget]


def format_input(pair: QueryContextPair | tuple[str, str],
                 config: ClassifierConfig) -> str:
    """Render one pair as a single classification sequence string."""
    query, context = as_single_pair(pair)
    query_tokens = simple_tokens(query)
    context_tokens = truncate_context_tokens(
        simple_tokens(context), len(query_tokens), config.max_sequence_length)
    return " ".join([CLS_MARKER, *context_tokens, config.separator, *query_tokens])
