"""Interchangeable groundedness backends behind one classify contract."""

from ..errors import ValidationError
from .base import (
    CLASS_ORDER,
    ClassifierConfig,
    GroundednessVerdict,
    PairClassifier,
    check_pair_inputs,
    threshold_decide,
    validate_verdict,
)
from .contract import ContractReport, check_classify_endpoint
from .embedded import EmbeddedClassifier
from .endpoint import TOKEN_ENV_VAR, EndpointClassifier
from .formatting import CLS_MARKER, format_input, truncate_context_tokens
from .lexical import LexicalOverlapClassifier, default_stopwords, lexical_overlap_score


def build_classifier(config: ClassifierConfig) -> PairClassifier:
    """Instantiate the backend a config selects."""
    if config.backend == "lexical":
        return LexicalOverlapClassifier(threshold=config.threshold)
    if config.backend == "endpoint":
        return EndpointClassifier(
            endpoint_url=config.endpoint_url,
            threshold=config.threshold,
            max_sequence_length=config.max_sequence_length,
        )
    if config.backend == "embedded":
        return EmbeddedClassifier(
            artifact_dir=config.artifact_dir,
            threshold=config.threshold,
            max_sequence_length=config.max_sequence_length,
        )
    raise ValidationError(f"unknown backend {config.backend!r}")


__all__ = [
    "CLASS_ORDER",
    "CLS_MARKER",
    "ClassifierConfig",
    "ContractReport",
    "EmbeddedClassifier",
    "EndpointClassifier",
    "GroundednessVerdict",
    "LexicalOverlapClassifier",
    "PairClassifier",
    "TOKEN_ENV_VAR",
    "build_classifier",
    "check_classify_endpoint",
    "check_pair_inputs",
    "default_stopwords",
    "format_input",
    "lexical_overlap_score",
    "threshold_decide",
    "truncate_context_tokens",
    "validate_verdict",
]
