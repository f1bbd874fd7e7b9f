"""groundgate: decide whether a query is answerable from its context before
spending expensive LLM inference on it.

The package covers the full loop: corpus construction from QA/IR datasets,
interchangeable groundedness classifiers (lexical baseline, remote endpoint,
embedded exported model), a zero-shot LLM judge with a fixed 40-template
prompt bank, the gate service that answers or abstains, a seeded evaluation
harness, and a FLOP cost/amortization model.
"""

from .classifiers import (
    ClassifierConfig,
    EmbeddedClassifier,
    EndpointClassifier,
    GroundednessVerdict,
    LexicalOverlapClassifier,
    PairClassifier,
    build_classifier,
    lexical_overlap_score,
)
from .corpus import (
    GROUNDED,
    UNGROUNDED,
    DatasetDescriptor,
    QueryContextPair,
    make_pair,
    read_pairs,
    stratified_split,
    write_pairs,
)
from .costmodel import ModelCostProfile, breakeven_queries, forward_flops
from .errors import GroundgateError
from .evaluation import accuracy, aggregate_seeds, confusion, run_eval
from .gateway import GateDecision, GateRequest, Gateway
from .judge import load_prompt_bank, parse_verdict, render_prompt, sweep

__version__ = "0.1.0"

__all__ = [
    "ClassifierConfig",
    "DatasetDescriptor",
    "EmbeddedClassifier",
    "EndpointClassifier",
    "GROUNDED",
    "GateDecision",
    "GateRequest",
    "Gateway",
    "GroundednessVerdict",
    "GroundgateError",
    "LexicalOverlapClassifier",
    "ModelCostProfile",
    "PairClassifier",
    "QueryContextPair",
    "UNGROUNDED",
    "accuracy",
    "aggregate_seeds",
    "breakeven_queries",
    "build_classifier",
    "confusion",
    "forward_flops",
    "lexical_overlap_score",
    "load_prompt_bank",
    "make_pair",
    "parse_verdict",
    "read_pairs",
    "render_prompt",
    "run_eval",
    "stratified_split",
    "sweep",
    "write_pairs",
]
