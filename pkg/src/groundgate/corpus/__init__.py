"""Corpus construction: dataset adapters, splitting, and the canonical file format."""

from .beir import DatasetDescriptor, parse_beir
from .io import read_pairs, write_pairs
from .newsqa import load_newsqa, parse_newsqa
from .records import (
    GROUNDED,
    LABELS,
    SOURCES,
    SPLITS,
    UNGROUNDED,
    QueryContextPair,
    SkipReport,
    corpus_digest,
    make_pair,
    validate_pair,
)
from .splits import stratified_split
from .squad import load_squad_v2, parse_squad_v2
from .synthetic import (
    build_containment_pairs,
    build_relational_pairs,
    build_squad_style_document,
)

__all__ = [
    "DatasetDescriptor",
    "GROUNDED",
    "LABELS",
    "QueryContextPair",
    "SOURCES",
    "SPLITS",
    "SkipReport",
    "UNGROUNDED",
    "build_containment_pairs",
    "build_relational_pairs",
    "build_squad_style_document",
    "corpus_digest",
    "load_newsqa",
    "load_squad_v2",
    "make_pair",
    "parse_beir",
    "parse_newsqa",
    "parse_squad_v2",
    "read_pairs",
    "stratified_split",
    "validate_pair",
    "write_pairs",
]
