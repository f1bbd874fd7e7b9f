import json

import pytest
import torch

from trainkit import ExportParityError, ModelArtifact, export_artifact
from trainkit.export import load_native_model, read_probe, score_pairs


def test_export_accepted_within_tolerance(trained_artifact):
    report = export_artifact(trained_artifact)
    assert report.accepted
    assert report.max_deviation <= 1e-3
    assert report.n_pairs > 0
    assert (trained_artifact / "model.pt").exists()
    on_disk = json.loads((trained_artifact / "export_parity.json").read_text())
    assert on_disk["accepted"] is True


def test_reexport_is_byte_identical(trained_artifact):
    export_artifact(trained_artifact)
    first = (trained_artifact / "model.pt").read_bytes()
    export_artifact(trained_artifact)
    second = (trained_artifact / "model.pt").read_bytes()
    assert first == second


def test_exported_scores_match_native(trained_artifact):
    export_artifact(trained_artifact)
    artifact = ModelArtifact.load(trained_artifact)
    native, vocab = load_native_model(artifact)
    scripted = torch.jit.load(str(trained_artifact / "model.pt"))
    pairs = [(row["query"], row["context"]) for row in read_probe(artifact)]
    budget = artifact.manifest["max_sequence_length"]
    native_scores = score_pairs(native, vocab, pairs, budget)
    scripted_scores = score_pairs(scripted, vocab, pairs, budget)
    assert max(abs(a - b) for a, b in zip(native_scores, scripted_scores)) <= 1e-3


def test_parity_gate_rejects_with_report(trained_artifact):
    with pytest.raises(ExportParityError) as excinfo:
        export_artifact(trained_artifact, tolerance=-1.0)
    assert excinfo.value.report["accepted"] is False
    assert excinfo.value.report["n_pairs"] > 0


def test_embedded_backend_loads_export(trained_artifact):
    """Cross-package check: the gate's embedded backend consumes the artifact."""
    groundgate_classifiers = pytest.importorskip("groundgate.classifiers")

    export_artifact(trained_artifact)
    embedded = groundgate_classifiers.EmbeddedClassifier(
        artifact_dir=str(trained_artifact), threshold=0.5)
    artifact = ModelArtifact.load(trained_artifact)
    native, vocab = load_native_model(artifact)
    pairs = [(row["query"], row["context"]) for row in read_probe(artifact)]
    native_scores = score_pairs(native, vocab, pairs,
                                artifact.manifest["max_sequence_length"])
    embedded_scores = embedded.score_pairs(pairs)
    deviation = max(abs(a - b) for a, b in zip(native_scores, embedded_scores))
    assert deviation <= 1e-3, f"embedded backend deviates by {deviation}"
