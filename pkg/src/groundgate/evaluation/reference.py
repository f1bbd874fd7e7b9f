"""Comparison against the published accuracy reference table.

Reference cells are percentages as published; measured accuracies are
fractions in [0, 1]. Deltas are reported in fraction space. Unknown
model/dataset keys are listed as uncovered rather than erroring — reference
coverage is a property of the published table, not of our run.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def load_reference(path: str | Path | None = None) -> dict:
    if path is None:
        raw = resources.files("groundgate.data").joinpath(
            "reference_benchmarks.json").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    return json.loads(raw)


def reference_cell(reference: dict, model: str, dataset: str,
                   setting: str = "ft") -> float | None:
    """Published accuracy (percent) for one cell, or None when absent."""
    record = reference.get("models", {}).get(model)
    if record is None:
        return None
    cell = record.get("accuracy", {}).get(dataset, {}).get(setting)
    if cell is None or cell.get("mean") is None:
        return None
    return float(cell["mean"])


def compare_to_reference(measured: dict[tuple[str, str, str], float],
                         reference: dict | None = None,
                         tolerance: float = 0.02) -> list[dict]:
    """Delta report for measured cells keyed by (model, dataset, setting).

    Each entry carries the measured fraction, the published percent, the delta
    in fraction space, and whether it exceeded the tolerance; cells missing
    from the reference come back as status "uncovered".
    """
    reference = reference if reference is not None else load_reference()
    report = []
    for (model, dataset, setting), value in sorted(measured.items()):
        published = reference_cell(reference, model, dataset, setting)
        if published is None:
            report.append({
                "model": model, "dataset": dataset, "setting": setting,
                "measured": value, "reference": None, "delta": None,
                "status": "uncovered",
            })
            continue
        delta = value - published / 100.0
        report.append({
            "model": model, "dataset": dataset, "setting": setting,
            "measured": value, "reference": published, "delta": delta,
            "status": "within_tolerance" if abs(delta) <= tolerance else "flagged",
        })
    return report
