"""Gateway configuration file: JSON selecting backend, threshold, downstream,
and cache size. Secrets never appear here — bearer tokens come from the
environment (see the classifier and downstream client modules)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..classifiers import ClassifierConfig, build_classifier
from .core import DEFAULT_ABSTAIN_MESSAGE, DEFAULT_DOWNSTREAM_FLOPS, Gateway, HttpDownstream


@dataclass
class GatewayConfig:
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)
    downstream_url: str | None = None
    downstream_timeout_s: float = 60.0
    downstream_flops_per_query: float = DEFAULT_DOWNSTREAM_FLOPS
    cache_enabled: bool = True
    cache_size: int = 1024
    abstain_message: str = DEFAULT_ABSTAIN_MESSAGE

    @classmethod
    def from_file(cls, path: str | Path) -> "GatewayConfig":
        payload = json.loads(Path(path).read_text("utf-8"))
        classifier = ClassifierConfig(**payload.get("classifier", {}))
        downstream = payload.get("downstream", {})
        cache = payload.get("cache", {})
        return cls(
            classifier=classifier,
            downstream_url=downstream.get("url"),
            downstream_timeout_s=downstream.get("timeout_s", 60.0),
            downstream_flops_per_query=downstream.get(
                "flops_per_query", DEFAULT_DOWNSTREAM_FLOPS),
            cache_enabled=cache.get("enabled", True),
            cache_size=cache.get("max_entries", 1024),
            abstain_message=payload.get("abstain_message", DEFAULT_ABSTAIN_MESSAGE),
        )


def build_gateway(config: GatewayConfig) -> Gateway:
    downstream = None
    if config.downstream_url:
        downstream = HttpDownstream(config.downstream_url,
                                    timeout_s=config.downstream_timeout_s)
    return Gateway(
        classifier=build_classifier(config.classifier),
        downstream=downstream,
        cache_enabled=config.cache_enabled,
        cache_size=config.cache_size,
        abstain_message=config.abstain_message,
        downstream_flops_per_query=config.downstream_flops_per_query,
    )
