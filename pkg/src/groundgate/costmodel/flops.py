"""Transformer FLOP estimates and the fine-tuning amortization calculator.

The forward-pass formula is deliberately simple and is emitted alongside every
estimate so numbers stay auditable:

    FLOPs_fwd = 2 * P * s  +  4 * L * s^2 * d

Dense multiply-adds count as 2 ops over all P parameters per token; the second
term covers attention score and value products (2 matmuls of s x s x d per
layer, 2 ops each). Fine-tuning one example is costed at 3x a forward pass
(forward plus roughly double for the backward pass).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError

FORWARD_FLOPS_FORMULA = "2 * parameter_count * seq_len + 4 * layers * seq_len^2 * hidden_dim"
FINETUNE_FORWARD_RATIO = 3.0


@dataclass(frozen=True)
class ModelCostProfile:
    """Architecture and usage quantities behind a FLOP estimate.

    Architecture fields must be positive; ``train_examples``/``epochs`` may be
    zero (a profile that is never fine-tuned).
    """

    name: str
    parameter_count: float
    layers: int
    hidden_dim: int
    sequence_length: int
    train_examples: int = 0
    epochs: int = 0

    def __post_init__(self) -> None:
        for field in ("parameter_count", "layers", "hidden_dim", "sequence_length"):
            if getattr(self, field) < 1:
                raise ValidationError(f"profile {self.name!r}: {field} must be >= 1")
        for field in ("train_examples", "epochs"):
            if getattr(self, field) < 0:
                raise ValidationError(f"profile {self.name!r}: {field} must be >= 0")


def forward_flops(profile: ModelCostProfile) -> float:
    """Single forward pass at the profile's sequence length."""
    s = profile.sequence_length
    return (2.0 * profile.parameter_count * s
            + 4.0 * profile.layers * float(s) ** 2 * profile.hidden_dim)


def finetune_flops_per_example(profile: ModelCostProfile) -> float:
    """Forward plus backward cost of one training example: 3x forward."""
    return FINETUNE_FORWARD_RATIO * forward_flops(profile)


def total_finetune_flops(profile: ModelCostProfile) -> float:
    return finetune_flops_per_example(profile) * profile.train_examples * profile.epochs


def breakeven_queries(ft_total: float, encoder_inference: float, llm_inference: float) -> float:
    """Gated queries needed before fine-tuning cost is amortized.

    Each gated query saves ``llm_inference - encoder_inference`` FLOPs compared
    to always invoking the large model, so breakeven is the ratio of the
    one-time training cost to that per-query saving. Encoder inference is
    charged (conservative), so no breakeven exists unless the LLM is strictly
    more expensive per query.
    """
    if ft_total < 0 or encoder_inference < 0:
        raise ValidationError("FLOP quantities must be non-negative")
    if llm_inference <= encoder_inference:
        raise ValidationError(
            "no breakeven: llm_inference must exceed encoder_inference "
            f"({llm_inference} <= {encoder_inference})")
    return ft_total / (llm_inference - encoder_inference)


def estimate_report(profile: ModelCostProfile) -> dict:
    """All estimates for a profile, with the formula attached for audit."""
    return {
        "name": profile.name,
        "formula": FORWARD_FLOPS_FORMULA,
        "forward_flops": forward_flops(profile),
        "finetune_flops_per_example": finetune_flops_per_example(profile),
        "total_finetune_flops": total_finetune_flops(profile),
    }
