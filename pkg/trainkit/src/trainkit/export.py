"""Artifact export: TorchScript graph plus a score-parity gate.

``export_artifact`` compiles the trained model into ``model.pt`` inside the
artifact directory, which then satisfies the embedded-backend layout
(``model.pt`` + ``vocab.json`` + ``manifest.json``). The export is rejected
outright when scripted and native scores diverge by more than 1e-3 on the
artifact's probe set — a silently wrong export is worse than none.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import torch

from .data import encode_example
from .model import GROUNDED_INDEX, PRESETS, GroundednessEncoder
from .train import ModelArtifact
from .vocab import Vocab

PARITY_TOLERANCE = 1e-3


class ExportParityError(RuntimeError):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


def load_native_model(artifact: ModelArtifact) -> tuple[GroundednessEncoder, Vocab]:
    vocab = Vocab.load(artifact.directory / "vocab.json")
    spec = PRESETS[artifact.manifest["base_model"]]
    model = GroundednessEncoder(len(vocab), spec)
    state = torch.load(artifact.directory / "weights.pt", map_location="cpu",
                       weights_only=True)
    model.load_state_dict(state)
    model.eval()
    return model, vocab


def read_probe(artifact: ModelArtifact) -> list[dict]:
    probe_path = artifact.directory / "probe.jsonl"
    rows = [json.loads(line) for line in probe_path.read_text("utf-8").splitlines()
            if line.strip()]
    if not rows:
        raise ExportParityError("artifact has an empty probe set")
    return rows


def score_pairs(model, vocab: Vocab, pairs: list[tuple[str, str]],
                max_sequence_length: int) -> list[float]:
    scores = []
    with torch.no_grad():
        for query, context in pairs:
            ids = encode_example(query, context, vocab, max_sequence_length)
            if ids is None:
                raise ValueError("probe query exceeds the sequence budget")
            input_ids = torch.tensor([ids], dtype=torch.long)
            mask = torch.ones_like(input_ids)
            logits = model(input_ids, mask)
            scores.append(float(torch.softmax(logits, dim=-1)[0, GROUNDED_INDEX]))
    return scores


@dataclass
class ParityReport:
    max_deviation: float
    n_pairs: int
    accepted: bool

    def to_dict(self) -> dict:
        return {"max_deviation": self.max_deviation, "n_pairs": self.n_pairs,
                "accepted": self.accepted, "tolerance": PARITY_TOLERANCE}


def export_artifact(artifact_dir: str | Path,
                    tolerance: float = PARITY_TOLERANCE) -> ParityReport:
    artifact = ModelArtifact.load(artifact_dir)
    model, vocab = load_native_model(artifact)
    scripted = torch.jit.script(model)
    scripted.eval()

    probe = read_probe(artifact)
    pairs = [(row["query"], row["context"]) for row in probe]
    budget = int(artifact.manifest["max_sequence_length"])
    native_scores = score_pairs(model, vocab, pairs, budget)
    scripted_scores = score_pairs(scripted, vocab, pairs, budget)
    max_deviation = max(abs(a - b) for a, b in zip(native_scores, scripted_scores))

    report = ParityReport(max_deviation=max_deviation, n_pairs=len(pairs),
                          accepted=max_deviation <= tolerance)
    report_path = Path(artifact_dir) / "export_parity.json"
    report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                           encoding="utf-8")
    if not report.accepted:
        raise ExportParityError(
            f"export rejected: max score deviation {max_deviation:.2e} exceeds "
            f"{tolerance}", report.to_dict())

    buffer_path = Path(artifact_dir) / "model.pt"
    torch.jit.save(scripted, str(buffer_path))
    return report
