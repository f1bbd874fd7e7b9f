"""Compact transformer encoder with a binary head over the classification slot.

The graph takes exactly ``(input_ids, attention_mask)`` and returns two logits
(index 1 = grounded), which is the embedded-backend export contract. Besides
token and position embeddings, each position receives a cross-segment match
embedding — whether the same token also occurs on the other side of the
``[SEP]`` boundary. That feature is computed inside the graph from the input
ids, so exported and served models stay bit-compatible; it supplies the
lexical-matching prior a pretrained encoder would otherwise bring, which
matters when training from scratch at desk scale.

Pre-norm blocks with manual attention keep the whole module TorchScript-able
without fast-path surprises.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import torch
import torch.nn as nn

from .vocab import N_SPECIALS

GROUNDED_INDEX = 1


@dataclass(frozen=True)
class EncoderSpec:
    d_model: int
    n_layers: int
    n_heads: int
    d_ff: int
    max_sequence_length: int

    def to_dict(self) -> dict:
        return asdict(self)


PRESETS: dict[str, EncoderSpec] = {
    "tiny": EncoderSpec(d_model=96, n_layers=2, n_heads=4, d_ff=192,
                        max_sequence_length=96),
    "small": EncoderSpec(d_model=128, n_layers=3, n_heads=4, d_ff=256,
                         max_sequence_length=128),
}


class EncoderBlock(nn.Module):
    def __init__(self, d_model: int, n_heads: int, d_ff: int):
        super().__init__()
        self.n_heads = n_heads
        self.head_dim = d_model // n_heads
        self.scale = math.sqrt(self.head_dim)
        self.qkv = nn.Linear(d_model, 3 * d_model)
        self.proj = nn.Linear(d_model, d_model)
        self.norm1 = nn.LayerNorm(d_model)
        self.norm2 = nn.LayerNorm(d_model)
        self.ff = nn.Sequential(nn.Linear(d_model, d_ff), nn.GELU(),
                                nn.Linear(d_ff, d_model))

    def forward(self, x: torch.Tensor, padding: torch.Tensor) -> torch.Tensor:
        bsz, seq, dim = x.shape
        y = self.norm1(x)
        qkv = self.qkv(y).view(bsz, seq, 3, self.n_heads, self.head_dim)
        qkv = qkv.permute(2, 0, 3, 1, 4)
        q, k, v = qkv[0], qkv[1], qkv[2]
        scores = torch.matmul(q, k.transpose(-2, -1)) / self.scale
        scores = scores.masked_fill(padding[:, None, None, :], float("-inf"))
        attended = torch.matmul(torch.softmax(scores, dim=-1), v)
        x = x + self.proj(attended.transpose(1, 2).reshape(bsz, seq, dim))
        x = x + self.ff(self.norm2(x))
        return x


class GroundednessEncoder(nn.Module):
    def __init__(self, vocab_size: int, spec: EncoderSpec, sep_id: int = 3):
        super().__init__()
        self.sep_id = sep_id
        self.n_specials = N_SPECIALS
        self.max_sequence_length = spec.max_sequence_length
        self.tok_emb = nn.Embedding(vocab_size, spec.d_model)
        self.pos_emb = nn.Embedding(spec.max_sequence_length, spec.d_model)
        self.match_emb = nn.Embedding(2, spec.d_model)
        self.blocks = nn.ModuleList(
            [EncoderBlock(spec.d_model, spec.n_heads, spec.d_ff)
             for _ in range(spec.n_layers)])
        self.norm = nn.LayerNorm(spec.d_model)
        self.head = nn.Linear(spec.d_model, 2)

    def cross_segment_match(self, input_ids: torch.Tensor,
                            attention_mask: torch.Tensor) -> torch.Tensor:
        """1 where a content token also occurs on the other side of [SEP]."""
        live = attention_mask == 1
        is_sep = input_ids == self.sep_id
        after_sep = torch.cumsum(is_sep.long(), dim=1) >= 1
        content = (input_ids >= self.n_specials) & live
        in_context = content & (~after_sep)
        in_query = content & after_sep & (~is_sep)
        equal = input_ids[:, :, None] == input_ids[:, None, :]
        context_matched = (equal & in_query[:, None, :]).any(dim=-1) & in_context
        query_matched = (equal & in_context[:, None, :]).any(dim=-1) & in_query
        return (context_matched | query_matched).long()

    def forward(self, input_ids: torch.Tensor,
                attention_mask: torch.Tensor) -> torch.Tensor:
        seq = input_ids.shape[1]
        positions = torch.arange(seq, device=input_ids.device)
        match = self.cross_segment_match(input_ids, attention_mask)
        x = self.tok_emb(input_ids) + self.pos_emb(positions)[None] + self.match_emb(match)
        padding = attention_mask == 0
        for block in self.blocks:
            x = block(x, padding)
        return self.head(self.norm(x)[:, 0])


def build_model(vocab_size: int, base_model: str, seed: int) -> GroundednessEncoder:
    if base_model not in PRESETS:
        raise ValueError(f"unknown base model {base_model!r}; presets: {sorted(PRESETS)}")
    torch.manual_seed(seed)
    return GroundednessEncoder(vocab_size, PRESETS[base_model])


def parameter_count(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters())
