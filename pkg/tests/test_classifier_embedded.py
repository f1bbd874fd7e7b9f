"""Embedded backend against a handmade TorchScript artifact."""

import json

import pytest

torch = pytest.importorskip("torch")

from groundgate.classifiers import EmbeddedClassifier
from groundgate.corpus import GROUNDED, UNGROUNDED


class EvidenceCounter(torch.nn.Module):
    """Grounded logit = (#'signal' tokens - #'noise' tokens) in the sequence."""

    def __init__(self, signal_id: int, noise_id: int):
        super().__init__()
        self.signal_id = signal_id
        self.noise_id = noise_id

    def forward(self, input_ids, attention_mask):
        mask = attention_mask.to(torch.float32)
        signal = ((input_ids == self.signal_id).to(torch.float32) * mask).sum(dim=1)
        noise = ((input_ids == self.noise_id).to(torch.float32) * mask).sum(dim=1)
        zeros = torch.zeros_like(signal)
        return torch.stack([zeros, signal - noise], dim=1)


TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "signal", "noise", "filler"]


@pytest.fixture()
def artifact_dir(tmp_path):
    root = tmp_path / "artifact"
    root.mkdir()
    vocab = {
        "tokens": TOKENS,
        "specials": {"pad": "[PAD]", "unk": "[UNK]", "cls": "[CLS]", "sep": "[SEP]"},
        "lowercase": True,
        "token_pattern": r"\w+|[^\w\s]|\[PAD\]|\[UNK\]|\[CLS\]|\[SEP\]",
    }
    (root / "vocab.json").write_text(json.dumps(vocab), encoding="utf-8")
    manifest = {
        "format_version": 1,
        "model_id": "evidence-counter",
        "max_sequence_length": 32,
        "grounded_index": 1,
        "parameter_count": 1000,
        "layers": 1,
        "hidden_dim": 8,
    }
    (root / "manifest.json").write_text(json.dumps(manifest), encoding="utf-8")
    module = torch.jit.script(EvidenceCounter(TOKENS.index("signal"), TOKENS.index("noise")))
    torch.jit.save(module, str(root / "model.pt"))
    return str(root)


def test_scores_follow_the_graph(artifact_dir):
    clf = EmbeddedClassifier(artifact_dir=artifact_dir, threshold=0.5)
    labels = clf.predict([
        ("anything", "signal signal filler"),
        ("anything", "noise noise filler"),
    ])
    assert list(labels) == [GROUNDED, UNGROUNDED]


def test_classify_verdict_invariants(artifact_dir):
    clf = EmbeddedClassifier(artifact_dir=artifact_dir, threshold=0.5)
    verdict = clf.classify(("anything", "signal filler"))
    assert verdict.label == GROUNDED
    assert 0.0 <= verdict.score <= 1.0
    assert verdict.backend_id == "embedded:evidence-counter"
    assert verdict.estimated_flops > 0.0


def test_deterministic_given_artifact(artifact_dir):
    clf = EmbeddedClassifier(artifact_dir=artifact_dir)
    a = clf.score_pairs([("q", "signal noise signal")])
    b = clf.score_pairs([("q", "signal noise signal")])
    assert a[0] == b[0]


def test_context_truncated_to_budget(artifact_dir):
    clf = EmbeddedClassifier(artifact_dir=artifact_dir, threshold=0.5)
    # 40 leading noise tokens push the trailing signal tokens past the
    # 32-token budget, so only noise is scored.
    context = " ".join(["noise"] * 40 + ["signal"] * 10)
    assert clf.predict([("query words", context)])[0] == UNGROUNDED


def test_artifact_version_is_stable_digest(artifact_dir):
    a = EmbeddedClassifier(artifact_dir=artifact_dir).artifact_version
    b = EmbeddedClassifier(artifact_dir=artifact_dir).artifact_version
    assert a == b and len(a) == 12


def test_unknown_format_version_rejected(artifact_dir, tmp_path):
    import shutil

    broken = tmp_path / "broken"
    shutil.copytree(artifact_dir, broken)
    manifest = json.loads((broken / "manifest.json").read_text())
    manifest["format_version"] = 99
    (broken / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(Exception, match="format_version"):
        EmbeddedClassifier(artifact_dir=str(broken)).classify(("q", "c"))
