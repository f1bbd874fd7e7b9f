"""FLOP estimation, the published cost ledger, and amortization arithmetic."""

from .flops import (
    FINETUNE_FORWARD_RATIO,
    FORWARD_FLOPS_FORMULA,
    ModelCostProfile,
    breakeven_queries,
    estimate_report,
    finetune_flops_per_example,
    forward_flops,
    total_finetune_flops,
)
from .ledger import (
    RATIO_TOLERANCE,
    CostLedgerEntry,
    amortization_note,
    check_ledger,
    ledger_from_json,
    ledger_to_json,
    load_ledger,
)

__all__ = [
    "CostLedgerEntry",
    "FINETUNE_FORWARD_RATIO",
    "FORWARD_FLOPS_FORMULA",
    "ModelCostProfile",
    "RATIO_TOLERANCE",
    "amortization_note",
    "breakeven_queries",
    "check_ledger",
    "estimate_report",
    "finetune_flops_per_example",
    "forward_flops",
    "ledger_from_json",
    "ledger_to_json",
    "load_ledger",
    "total_finetune_flops",
]
