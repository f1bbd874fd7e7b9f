"""Embedded backend: runs an exported model artifact in-process.

Artifact directory layout (the export contract any trainer must produce):

* ``model.pt`` — a TorchScript graph with signature
  ``forward(input_ids: int64[B, T], attention_mask: int64[B, T]) -> float32[B, 2]``.
* ``vocab.json`` — ``{"tokens": [...], "specials": {"pad", "unk", "cls", "sep"},
  "lowercase": bool, "token_pattern": regex}``. Token ids are list positions.
* ``manifest.json`` — ``{"format_version", "model_id", "max_sequence_length",
  "grounded_index", "parameter_count", "layers", "hidden_dim", ...}``.

Input assembly mirrors the classify formatting contract: classification slot
first, then the (tail-truncated) context, the separator, and the never-
truncated query. Sessions hold a lock so one loaded artifact can serve many
threads.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
import time
from pathlib import Path

import numpy as np

from ..corpus.records import QueryContextPair
from ..costmodel import ModelCostProfile, forward_flops
from ..errors import ValidationError
from .base import GroundednessVerdict, PairClassifier, as_single_pair, check_pair_inputs
from .formatting import truncate_context_tokens

FORMAT_VERSION = 1


class ArtifactVocab:
    """Word-level tokenizer reconstructed from the vocab sidecar."""

    def __init__(self, payload: dict):
        self.tokens: list[str] = payload["tokens"]
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        specials = payload["specials"]
        self.pad_id = self.index[specials["pad"]]
        self.unk_id = self.index[specials["unk"]]
        self.cls_id = self.index[specials["cls"]]
        self.sep_id = self.index[specials["sep"]]
        self.lowercase: bool = payload.get("lowercase", True)
        self.pattern = re.compile(payload.get("token_pattern", r"\w+|[^\w\s]"))

    def text_tokens(self, text: str) -> list[str]:
        if self.lowercase:
            text = text.lower()
        return self.pattern.findall(text)

    def ids(self, tokens: list[str]) -> list[int]:
        return [self.index.get(tok, self.unk_id) for tok in tokens]


class EmbeddedClassifier(PairClassifier):
    """Scores pairs with an exported TorchScript artifact, no server needed."""

    def __init__(self, artifact_dir: str, threshold: float = 0.5,
                 max_sequence_length: int | None = None):
        self.artifact_dir = artifact_dir
        self.threshold = threshold
        self.max_sequence_length = max_sequence_length
        self._session = None
        self._lock = threading.Lock()

    # -- artifact loading ----------------------------------------------------
    def _load(self):
        if self._session is not None:
            return self._session
        with self._lock:
            if self._session is not None:
                return self._session
            import torch  # deferred: only the embedded backend needs it

            root = Path(self.artifact_dir)
            manifest = json.loads((root / "manifest.json").read_text("utf-8"))
            if manifest.get("format_version") != FORMAT_VERSION:
                raise ValidationError(
                    f"unsupported artifact format_version {manifest.get('format_version')!r}")
            vocab = ArtifactVocab(json.loads((root / "vocab.json").read_text("utf-8")))
            model = torch.jit.load(str(root / "model.pt"), map_location="cpu")
            model.eval()
            digest = hashlib.sha256(
                (root / "manifest.json").read_bytes()).hexdigest()[:12]
            self._session = (model, vocab, manifest, digest)
        return self._session

    @property
    def backend_id(self) -> str:
        if self._session is not None:
            return f"embedded:{self._session[2].get('model_id', 'unknown')}"
        return f"embedded:{Path(self.artifact_dir).name}"

    @property
    def artifact_version(self) -> str:
        return self._load()[3]

    # -- scoring ---------------------------------------------------------------
    def _sequence_ids(self, query: str, context: str, vocab: ArtifactVocab,
                      manifest: dict) -> list[int]:
        budget = self.max_sequence_length or int(manifest["max_sequence_length"])
        query_tokens = vocab.text_tokens(query)
        context_tokens = truncate_context_tokens(
            vocab.text_tokens(context), len(query_tokens), budget)
        return ([vocab.cls_id] + vocab.ids(context_tokens)
                + [vocab.sep_id] + vocab.ids(query_tokens))

    def _score_batch(self, pairs: list[tuple[str, str]]) -> np.ndarray:
        import torch

        model, vocab, manifest, _ = self._load()
        sequences = [self._sequence_ids(q, c, vocab, manifest) for q, c in pairs]
        width = max(len(s) for s in sequences)
        input_ids = torch.full((len(sequences), width), vocab.pad_id, dtype=torch.long)
        mask = torch.zeros((len(sequences), width), dtype=torch.long)
        for row, seq in enumerate(sequences):
            input_ids[row, :len(seq)] = torch.tensor(seq, dtype=torch.long)
            mask[row, :len(seq)] = 1
        with self._lock, torch.no_grad():
            logits = model(input_ids, mask)
        probs = torch.softmax(logits, dim=-1)
        grounded_index = int(manifest.get("grounded_index", 1))
        return probs[:, grounded_index].numpy().astype(float)

    def score_pairs(self, X) -> np.ndarray:
        pairs = check_pair_inputs(X)
        return self._score_batch(pairs)

    def _estimated_flops(self, sequence_len: int, manifest: dict) -> float:
        try:
            profile = ModelCostProfile(
                name=manifest.get("model_id", "embedded"),
                parameter_count=float(manifest["parameter_count"]),
                layers=int(manifest["layers"]),
                hidden_dim=int(manifest["hidden_dim"]),
                sequence_length=max(sequence_len, 1),
            )
        except (KeyError, ValidationError):
            return 1.0  # unknown architecture; still strictly positive for a model
        return forward_flops(profile)

    def classify(self, pair: QueryContextPair | tuple[str, str]) -> GroundednessVerdict:
        query, context = as_single_pair(pair)
        _, vocab, manifest, _ = self._load()
        start = time.perf_counter()
        score = float(self._score_batch([(query, context)])[0])
        latency = time.perf_counter() - start
        used_len = len(self._sequence_ids(query, context, vocab, manifest))
        verdict = self._finish_verdict(score, latency,
                                       self._estimated_flops(used_len, manifest))
        return GroundednessVerdict(
            label=verdict.label, score=verdict.score, backend_id=self.backend_id,
            latency_s=verdict.latency_s, estimated_flops=verdict.estimated_flops)
