"""Word-level vocabulary shared between training, serving, and export.

The on-disk schema matches what the embedded classifier backend loads:
``{"tokens": [...], "specials": {...}, "lowercase": true, "token_pattern":
regex}``. Specials occupy the first four ids so the model can treat
``id < 4`` as "not a content token".
"""

from __future__ import annotations

import json
import re
from collections import Counter
from pathlib import Path
from typing import Iterable

TOKEN_PATTERN = r"\w+|[^\w\s]"
SPECIALS = {"pad": "[PAD]", "unk": "[UNK]", "cls": "[CLS]", "sep": "[SEP]"}
N_SPECIALS = 4


class Vocab:
    def __init__(self, tokens: list[str], lowercase: bool = True,
                 token_pattern: str = TOKEN_PATTERN):
        expected = [SPECIALS["pad"], SPECIALS["unk"], SPECIALS["cls"], SPECIALS["sep"]]
        if tokens[:N_SPECIALS] != expected:
            raise ValueError(f"vocab must start with specials {expected}")
        self.tokens = tokens
        self.index = {tok: i for i, tok in enumerate(tokens)}
        self.lowercase = lowercase
        self.token_pattern = token_pattern
        self._regex = re.compile(token_pattern)
        self.pad_id, self.unk_id, self.cls_id, self.sep_id = 0, 1, 2, 3

    def __len__(self) -> int:
        return len(self.tokens)

    def tokenize(self, text: str) -> list[str]:
        if self.lowercase:
            text = text.lower()
        return self._regex.findall(text)

    def encode(self, text: str) -> list[int]:
        return [self.index.get(tok, self.unk_id) for tok in self.tokenize(text)]

    def to_payload(self) -> dict:
        return {
            "tokens": self.tokens,
            "specials": SPECIALS,
            "lowercase": self.lowercase,
            "token_pattern": self.token_pattern,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_payload(), ensure_ascii=False),
                              encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocab":
        payload = json.loads(Path(path).read_text("utf-8"))
        return cls(tokens=payload["tokens"], lowercase=payload.get("lowercase", True),
                   token_pattern=payload.get("token_pattern", TOKEN_PATTERN))


def build_vocab(texts: Iterable[str], max_size: int = 8000,
                lowercase: bool = True) -> Vocab:
    """Frequency-ranked vocabulary with ties broken alphabetically."""
    regex = re.compile(TOKEN_PATTERN)
    counts: Counter[str] = Counter()
    for text in texts:
        counts.update(regex.findall(text.lower() if lowercase else text))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    body = [tok for tok, _ in ranked[: max_size - N_SPECIALS]]
    tokens = [SPECIALS["pad"], SPECIALS["unk"], SPECIALS["cls"], SPECIALS["sep"]] + body
    return Vocab(tokens=tokens, lowercase=lowercase)
