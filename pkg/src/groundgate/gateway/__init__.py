"""Deployable gate service: classify first, then answer or abstain."""

from .app import create_app, serve
from .cache import DecisionCache, cache_key
from .config import GatewayConfig, build_gateway
from .core import (
    ACTION_ABSTAIN,
    ACTION_ANSWER,
    DEFAULT_ABSTAIN_MESSAGE,
    DEFAULT_DOWNSTREAM_FLOPS,
    GateDecision,
    GateRequest,
    Gateway,
    HttpDownstream,
)
from .metrics import GatewayMetrics, MetricsSnapshot

__all__ = [
    "ACTION_ABSTAIN",
    "ACTION_ANSWER",
    "DEFAULT_ABSTAIN_MESSAGE",
    "DEFAULT_DOWNSTREAM_FLOPS",
    "DecisionCache",
    "GateDecision",
    "GateRequest",
    "Gateway",
    "GatewayConfig",
    "GatewayMetrics",
    "HttpDownstream",
    "MetricsSnapshot",
    "build_gateway",
    "cache_key",
    "create_app",
    "serve",
]
