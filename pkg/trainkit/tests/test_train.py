import json

from trainkit import ModelArtifact, TrainConfig, train
from trainkit.data import read_corpus


def all_query_tokens_in_context(query: str, context: str) -> bool:
    """Independent separability oracle for the containment scheme."""
    return set(query.lower().split()) <= set(context.lower().split())


def test_containment_corpus_is_separable_by_oracle(containment_corpus):
    for split in ("train", "dev"):
        for example in read_corpus(containment_corpus[split]):
            contained = all_query_tokens_in_context(example.query, example.context)
            assert contained == (example.label == "grounded"), example.id


def test_training_on_separable_corpus_reaches_95(trained_artifact):
    manifest = ModelArtifact.load(trained_artifact).manifest
    assert manifest["dev_accuracy"] >= 0.95


def test_artifact_directory_complete(trained_artifact):
    for name in ("manifest.json", "weights.pt", "vocab.json", "probe.jsonl",
                 "training_log.jsonl"):
        assert (trained_artifact / name).exists(), name


def test_manifest_records_reproducibility_metadata(trained_artifact):
    manifest = ModelArtifact.load(trained_artifact).manifest
    config = manifest["train_config"]
    assert config["seed"] == 0
    assert config["base_model"] == "tiny"
    assert config["off_grid_fields"] == ["learning_rate"]
    assert len(manifest["corpus_digest"]) == 64
    assert manifest["grounded_index"] == 1
    assert manifest["parameter_count"] > 0
    assert 0.0 <= manifest["dev_accuracy"] <= 1.0


def test_training_log_has_one_line_per_epoch(trained_artifact):
    lines = (trained_artifact / "training_log.jsonl").read_text().splitlines()
    assert len(lines) == 6
    records = [json.loads(line) for line in lines]
    assert all({"epoch", "loss", "dev_accuracy"} <= set(r) for r in records)


def test_probe_set_drawn_from_dev(containment_corpus, trained_artifact):
    dev_ids = {e.id for e in read_corpus(containment_corpus["dev"])}
    probe = [json.loads(line)
             for line in (trained_artifact / "probe.jsonl").read_text().splitlines()]
    assert probe
    assert all(row["id"] in dev_ids for row in probe)


def test_same_config_and_seed_reproduces(containment_corpus, tmp_path):
    config = TrainConfig(base_model="tiny", learning_rate=1e-3, batch_size=32,
                         seed=4, epochs=2)
    a = train(config, containment_corpus["train"], containment_corpus["dev"],
              tmp_path / "a")
    b = train(config, containment_corpus["train"], containment_corpus["dev"],
              tmp_path / "b")
    assert a.manifest["train_config"] == b.manifest["train_config"]
    assert a.manifest["corpus_digest"] == b.manifest["corpus_digest"]
    # CPU training is deterministic here; allow a hair of slack anyway
    assert abs(a.manifest["dev_accuracy"] - b.manifest["dev_accuracy"]) <= 0.02
