"""trainkit: train, export, and serve groundedness encoder classifiers.

Consumes the canonical corpus file format and implements the /v1/classify
wire contract; exported artifacts load into the gate's embedded backend.
"""

from .data import Example, read_corpus
from .export import ExportParityError, ParityReport, export_artifact
from .model import PRESETS, EncoderSpec, GroundednessEncoder, build_model
from .train import (
    GRID,
    ModelArtifact,
    TrainConfig,
    TrainDiverged,
    grid,
    run_sweep,
    train,
)
from .vocab import Vocab, build_vocab

__version__ = "0.1.0"

__all__ = [
    "EncoderSpec",
    "Example",
    "ExportParityError",
    "GRID",
    "GroundednessEncoder",
    "ModelArtifact",
    "PRESETS",
    "ParityReport",
    "TrainConfig",
    "TrainDiverged",
    "Vocab",
    "build_model",
    "build_vocab",
    "export_artifact",
    "grid",
    "read_corpus",
    "run_sweep",
    "train",
]
