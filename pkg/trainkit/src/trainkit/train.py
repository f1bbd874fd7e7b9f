"""Supervised training over the canonical corpus, plus the hyperparameter grid.

The searchable grid is fixed: learning rate {1.5e-5, 2e-5, 3e-5}, batch size
{8, 16, 32}, weight decay {0.1, 0.01}, scheduler {linear, cosine}, warm-up
ratio {0.06, 0.25} — 72 configurations per seed. Values off that grid are
allowed but are recorded as off-grid in the manifest; from-scratch presets
need a larger learning rate than the grid's fine-tuning range assumes.

Every artifact directory is self-describing: weights, vocabulary, manifest
(enough to re-run the training command), a per-epoch log, and a 100-pair
probe set for export parity checks.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field, replace
from itertools import product
from pathlib import Path

import torch
import torch.nn as nn

from .data import BatchIterator, Example, corpus_digest, read_corpus
from .model import (
    GROUNDED_INDEX,
    PRESETS,
    build_model,
    parameter_count,
)
from .vocab import build_vocab

MANIFEST_FORMAT_VERSION = 1

GRID: dict[str, tuple] = {
    "learning_rate": (1.5e-5, 2e-5, 3e-5),
    "batch_size": (8, 16, 32),
    "weight_decay": (0.1, 0.01),
    "scheduler": ("linear", "cosine"),
    "warmup_ratio": (0.06, 0.25),
}


class TrainDiverged(RuntimeError):
    """Loss went non-finite; the run is marked failed, not fatal to a sweep."""


@dataclass(frozen=True)
class TrainConfig:
    base_model: str = "small"
    learning_rate: float = 2e-5
    batch_size: int = 16
    weight_decay: float = 0.01
    scheduler: str = "linear"
    warmup_ratio: float = 0.06
    seed: int = 0
    epochs: int = 3
    max_vocab: int = 8000

    def __post_init__(self) -> None:
        if self.base_model not in PRESETS:
            raise ValueError(f"unknown base model {self.base_model!r}")
        if self.scheduler not in ("linear", "cosine"):
            raise ValueError(f"unknown scheduler {self.scheduler!r}")
        if self.epochs < 0 or self.batch_size < 1:
            raise ValueError("epochs must be >= 0 and batch_size >= 1")

    def off_grid_fields(self) -> list[str]:
        return sorted(name for name, values in GRID.items()
                      if getattr(self, name) not in values)

    def to_dict(self) -> dict:
        record = asdict(self)
        record["off_grid_fields"] = self.off_grid_fields()
        return record


def grid(base: TrainConfig) -> list[TrainConfig]:
    """Full Cartesian product of the search space, one config per point."""
    names = list(GRID)
    configs = []
    for values in product(*(GRID[name] for name in names)):
        configs.append(replace(base, **dict(zip(names, values))))
    return configs


@dataclass
class ModelArtifact:
    directory: Path
    manifest: dict = field(default_factory=dict)

    @classmethod
    def load(cls, directory: str | Path) -> "ModelArtifact":
        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text("utf-8"))
        return cls(directory=directory, manifest=manifest)


def _lr_lambda(scheduler: str, warmup_steps: int, total_steps: int):
    def factor(step: int) -> float:
        if step < warmup_steps:
            return step / max(1, warmup_steps)
        remaining = (step - warmup_steps) / max(1, total_steps - warmup_steps)
        if scheduler == "cosine":
            return 0.5 * (1.0 + math.cos(math.pi * remaining))
        return max(0.0, 1.0 - remaining)
    return factor


def _evaluate(model: nn.Module, data: BatchIterator) -> float:
    model.eval()
    correct = 0
    with torch.no_grad():
        for input_ids, attention_mask, labels in data.batches():
            logits = model(input_ids, attention_mask)
            correct += int((logits.argmax(dim=-1) == labels).sum().item())
    return correct / len(data)


def holdout_split(examples: list[Example], dev_fraction: float = 0.1,
                  seed: int = 0) -> tuple[list[Example], list[Example]]:
    """Deterministic train/dev carve-out for corpora without a dev file."""
    order = sorted(examples, key=lambda e: e.id)
    random.Random(f"holdout:{seed}").shuffle(order)
    n_dev = max(1, int(len(order) * dev_fraction))
    return order[n_dev:], order[:n_dev]


def train(config: TrainConfig, train_path: str | Path,
          dev_path: str | Path | None, out_dir: str | Path,
          probe_size: int = 100) -> ModelArtifact:
    """Train one configuration and write a complete artifact directory.

    Without a dev file, a deterministic 10% holdout of the training corpus
    serves as dev.
    """
    train_examples = read_corpus(train_path)
    if dev_path is None:
        train_examples, dev_examples = holdout_split(train_examples,
                                                     seed=config.seed)
    else:
        dev_examples = read_corpus(dev_path)
    spec = PRESETS[config.base_model]

    vocab = build_vocab(
        (text for example in train_examples for text in (example.query, example.context)),
        max_size=config.max_vocab)
    train_batches = BatchIterator(train_examples, vocab, spec.max_sequence_length,
                                  config.batch_size)
    dev_batches = BatchIterator(dev_examples, vocab, spec.max_sequence_length,
                                batch_size=64)

    model = build_model(len(vocab), config.base_model, seed=config.seed)
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate,
                                  weight_decay=config.weight_decay)
    steps_per_epoch = math.ceil(len(train_batches) / config.batch_size)
    total_steps = max(1, steps_per_epoch * config.epochs)
    lr_schedule = torch.optim.lr_scheduler.LambdaLR(
        optimizer, _lr_lambda(config.scheduler, int(config.warmup_ratio * total_steps),
                              total_steps))
    loss_fn = nn.CrossEntropyLoss()
    shuffle_rng = random.Random(f"shuffle:{config.seed}")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    log_path = out / "training_log.jsonl"
    best_accuracy = 0.0
    best_state = {k: v.clone() for k, v in model.state_dict().items()}

    with open(log_path, "w", encoding="utf-8") as log:
        for epoch in range(config.epochs):
            model.train()
            epoch_loss = 0.0
            for input_ids, attention_mask, labels in train_batches.batches(shuffle_rng):
                optimizer.zero_grad()
                loss = loss_fn(model(input_ids, attention_mask), labels)
                if not torch.isfinite(loss):
                    raise TrainDiverged(f"non-finite loss at epoch {epoch}")
                loss.backward()
                optimizer.step()
                lr_schedule.step()
                epoch_loss += float(loss.item())
            dev_accuracy = _evaluate(model, dev_batches)
            if dev_accuracy >= best_accuracy:
                best_accuracy = dev_accuracy
                best_state = {k: v.clone() for k, v in model.state_dict().items()}
            log.write(json.dumps({"epoch": epoch, "loss": epoch_loss,
                                  "dev_accuracy": dev_accuracy}) + "\n")

    if config.epochs == 0:
        best_accuracy = _evaluate(model, dev_batches)
    model.load_state_dict(best_state)

    vocab.save(out / "vocab.json")
    torch.save(best_state, out / "weights.pt")
    _write_probe(dev_examples, out / "probe.jsonl", probe_size)

    manifest = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "model_id": f"groundedness-{config.base_model}-seed{config.seed}",
        "base_model": config.base_model,
        "train_config": config.to_dict(),
        "corpus_digest": corpus_digest(train_path),
        "dev_accuracy": best_accuracy,
        "train_examples": len(train_batches),
        "train_examples_skipped": train_batches.skipped,
        "vocab_size": len(vocab),
        "parameter_count": parameter_count(model),
        "layers": spec.n_layers,
        "hidden_dim": spec.d_model,
        "max_sequence_length": spec.max_sequence_length,
        "grounded_index": GROUNDED_INDEX,
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return ModelArtifact(directory=out, manifest=manifest)


def _write_probe(dev_examples: list[Example], path: Path, probe_size: int) -> None:
    rng = random.Random("probe")
    picked = dev_examples if len(dev_examples) <= probe_size else rng.sample(
        dev_examples, probe_size)
    with open(path, "w", encoding="utf-8") as fh:
        for example in picked:
            fh.write(json.dumps({"id": example.id, "query": example.query,
                                 "context": example.context, "label": example.label},
                                ensure_ascii=False) + "\n")


def run_sweep(base: TrainConfig, train_path: str | Path,
              dev_path: str | Path | None, out_dir: str | Path, seeds: list[int],
              max_configs: int | None = None) -> dict:
    """Grid sweep: every config per seed, failures recorded rather than fatal.

    Returns the sweep report; the winning config is best dev accuracy with
    ties broken by lower learning rate, then smaller batch.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runs = []
    for seed in seeds:
        configs = grid(replace(base, seed=seed))
        if max_configs is not None:
            configs = configs[:max_configs]
        for i, config in enumerate(configs):
            run_dir = out / f"seed{seed}" / f"config{i:03d}"
            record = {"seed": seed, "index": i, "config": config.to_dict()}
            try:
                artifact = train(config, train_path, dev_path, run_dir)
                record["status"] = "ok"
                record["dev_accuracy"] = artifact.manifest["dev_accuracy"]
                record["artifact"] = str(run_dir)
            except TrainDiverged as exc:
                record["status"] = "failed"
                record["error"] = str(exc)
            runs.append(record)
    completed = [r for r in runs if r["status"] == "ok"]
    winner = None
    if completed:
        winner = min(completed, key=lambda r: (-r["dev_accuracy"],
                                               r["config"]["learning_rate"],
                                               r["config"]["batch_size"]))
    report = {"runs": runs, "n_runs": len(runs),
              "n_failed": len(runs) - len(completed),
              "winner": winner}
    (out / "sweep_report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return report
