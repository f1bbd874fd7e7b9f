"""The published FLOPs ledger and its consistency checker.

Entries are stored verbatim from the published reference table; estimates made
by this package never overwrite them. The checker reports every entry whose
fine-tune/inference ratio strays more than 5% from the 3.0 forward+backward
model; it reports, it never "fixes" — several published rows are known to be
off-model and stay that way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import ValidationError
from .flops import FINETUNE_FORWARD_RATIO

RATIO_TOLERANCE = 0.05

PROVENANCE_VALUES = ("published", "estimated")


@dataclass(frozen=True)
class CostLedgerEntry:
    model: str
    ft_flops: float | None
    inference_flops: float | None
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCE_VALUES:
            raise ValidationError(f"unknown provenance {self.provenance!r}")
        for value in (self.ft_flops, self.inference_flops):
            if value is not None and value < 0:
                raise ValidationError(f"{self.model}: FLOPs must be non-negative")


def _reference_payload(path: str | Path | None = None) -> dict:
    if path is None:
        raw = resources.files("groundgate.data").joinpath(
            "reference_benchmarks.json").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    return json.loads(raw)


def load_ledger(path: str | Path | None = None) -> list[CostLedgerEntry]:
    payload = _reference_payload(path)
    entries = []
    for model, record in sorted(payload["models"].items()):
        flops = record.get("flops", {})
        entries.append(CostLedgerEntry(
            model=model,
            ft_flops=flops.get("finetune"),
            inference_flops=flops.get("inference"),
            provenance=record.get("provenance", "published"),
        ))
    return entries


def ledger_to_json(entries: list[CostLedgerEntry]) -> str:
    records = [
        {"model": e.model, "ft_flops": e.ft_flops,
         "inference_flops": e.inference_flops, "provenance": e.provenance}
        for e in sorted(entries, key=lambda e: e.model)
    ]
    return json.dumps(records, indent=2, sort_keys=True)


def ledger_from_json(raw: str) -> list[CostLedgerEntry]:
    return [CostLedgerEntry(model=r["model"], ft_flops=r["ft_flops"],
                            inference_flops=r["inference_flops"],
                            provenance=r["provenance"])
            for r in json.loads(raw)]


def check_ledger(entries: list[CostLedgerEntry]) -> list[dict]:
    """Per-entry FT/inference ratio report: ok, flagged, or unknown."""
    report = []
    for entry in entries:
        if entry.ft_flops is None or entry.inference_flops in (None, 0):
            report.append({"model": entry.model, "ratio": None, "status": "unknown"})
            continue
        ratio = entry.ft_flops / entry.inference_flops
        deviation = abs(ratio - FINETUNE_FORWARD_RATIO) / FINETUNE_FORWARD_RATIO
        report.append({
            "model": entry.model,
            "ratio": ratio,
            "status": "ok" if deviation <= RATIO_TOLERANCE else "flagged",
        })
    return report


def amortization_note(entries: list[CostLedgerEntry],
                      breakeven_targets: int = 5000,
                      encoder: str = "modernbert-base",
                      llm: str = "llama-3.1-8b-instruct") -> str:
    """Reconstruct the published "fewer than N inference queries" claim.

    Reads the encoder's per-example fine-tune cost and the LLM's per-query
    inference cost from the ledger and states the training-set size the claim
    implies. Emitted as a consistency note only — the published table does not
    define its fine-tune column precisely enough to assert this.
    """
    by_model = {e.model: e for e in entries}
    enc, big = by_model[encoder], by_model[llm]
    if enc.ft_flops is None or big.inference_flops is None:
        raise ValidationError("ledger lacks the FLOPs cells needed for the note")
    implied_examples = breakeven_targets * big.inference_flops / enc.ft_flops
    return (
        f"Consistency note: amortizing {encoder} fine-tuning within "
        f"{breakeven_targets:,} gated queries of {llm} "
        f"(per-query inference {big.inference_flops:.3g} FLOPs, per-example "
        f"fine-tune {enc.ft_flops:.3g} FLOPs) implies a training set of roughly "
        f"{implied_examples:,.0f} examples at one epoch. This is a reconstruction, "
        f"not an asserted fact; the published fine-tune column is not defined "
        f"precisely enough to pin it down."
    )
