"""Seeded evaluation runs of a classifier backend over a canonical corpus.

Trained backends follow the five-seed protocol (seeds 0-4 by default); a seed
is handed to the backend when it exposes a ``seed`` parameter and otherwise
only labels the run — deterministic backends legitimately produce zero
variance. Reports are byte-deterministic: stable key order, no timestamps.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from ..classifiers.base import PairClassifier
from ..corpus.records import QueryContextPair, corpus_digest
from ..errors import ValidationError
from .aggregate import DEFAULT_SEEDS, AggregateReport, EvalRun, build_report
from .metrics import accuracy, confusion


def run_once(pairs: Sequence[QueryContextPair], classifier: PairClassifier,
             seed: int, corpus_id: str | None = None) -> EvalRun:
    if not pairs:
        raise ValidationError("cannot evaluate an empty corpus")
    if "seed" in classifier.get_params():
        classifier.set_params(seed=seed)
    predicted = classifier.predict(list(pairs))
    predictions = tuple((p.id, str(label)) for p, label in zip(pairs, predicted))
    gold = {p.id: p.label for p in pairs}
    return EvalRun(
        corpus_id=corpus_id or corpus_digest(pairs),
        backend_id=classifier.backend_id,
        seed=seed,
        predictions=predictions,
        accuracy=accuracy(dict(predictions), gold),
    )


def run_eval(pairs: Sequence[QueryContextPair], classifier: PairClassifier,
             seeds: Sequence[int] = DEFAULT_SEEDS) -> AggregateReport:
    pairs = list(pairs)
    corpus_id = corpus_digest(pairs)
    gold = {p.id: p.label for p in pairs}
    runs = [run_once(pairs, classifier, seed, corpus_id) for seed in seeds]
    tp = tn = fp = fn = 0
    for run in runs:
        cm = confusion(dict(run.predictions), gold)
        tp, tn, fp, fn = tp + cm.tp, tn + cm.tn, fp + cm.fp, fn + cm.fn
    from .metrics import ConfusionMatrix

    return build_report(runs, ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn))


def report_json(report: AggregateReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_markdown(report: AggregateReport) -> str:
    cm = report.confusion_totals
    lines = [
        "# Evaluation report",
        "",
        f"- corpus: `{report.corpus_id[:16]}`",
        f"- backend: `{report.backend_id}`",
        f"- seeds: {', '.join(str(s) for s in report.seeds)}",
        f"- accuracy: {report.mean:.4f} +/- {report.std:.4f}",
        "",
        "| | predicted grounded | predicted ungrounded |",
        "|---|---|---|",
        f"| gold grounded | {cm.tp} | {cm.fn} |",
        f"| gold ungrounded | {cm.fp} | {cm.tn} |",
        "",
    ]
    if report.reference is not None:
        lines.append(f"- reference comparison: {json.dumps(report.reference, sort_keys=True)}")
        lines.append("")
    return "\n".join(lines)


def write_reports(report: AggregateReport, out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "report.json"
    md_path = out / "report.md"
    json_path.write_text(report_json(report), encoding="utf-8")
    md_path.write_text(report_markdown(report), encoding="utf-8")
    return {"json": json_path, "markdown": md_path}
