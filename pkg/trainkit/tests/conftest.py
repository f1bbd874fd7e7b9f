"""Shared fixtures: corpora built through the corpus tooling's CLI (the
external interface), and one session-scoped trained artifact."""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from trainkit import TrainConfig, train


def run_corpus_cli(*args: str) -> None:
    command = [sys.executable, "-m", "groundgate.cli", *args]
    result = subprocess.run(command, capture_output=True, text=True)
    assert result.returncode == 0, f"{command} failed:\n{result.stdout}\n{result.stderr}"


@pytest.fixture(scope="session")
def containment_corpus(tmp_path_factory) -> dict[str, Path]:
    """Canonical train/dev files for the trivially separable scheme."""
    root = tmp_path_factory.mktemp("containment")
    full = root / "full.jsonl"
    run_corpus_cli("corpus", "synthesize", "--scheme", "containment",
                   "--n", "500", "--seed", "3", "--out", str(full))
    run_corpus_cli("corpus", "split", "--in", str(full), "--ratios", "0.8", "0.1", "0.1",
                   "--seed", "0", "--out-dir", str(root))
    return {"train": root / "train.jsonl", "dev": root / "dev.jsonl",
            "test": root / "test.jsonl"}


@pytest.fixture(scope="session")
def trained_artifact(containment_corpus, tmp_path_factory) -> Path:
    """One tiny model trained on the containment corpus, shared across tests."""
    out = tmp_path_factory.mktemp("artifact") / "tiny-seed0"
    config = TrainConfig(base_model="tiny", learning_rate=1e-3, batch_size=32,
                         weight_decay=0.01, scheduler="linear", warmup_ratio=0.06,
                         seed=0, epochs=6)
    artifact = train(config, containment_corpus["train"], containment_corpus["dev"], out)
    assert artifact.manifest["dev_accuracy"] >= 0.9, artifact.manifest
    return out
