"""Evaluation harness: accuracy, confusion, seed aggregation, reference deltas."""

from .aggregate import (
    DEFAULT_SEEDS,
    AggregateReport,
    EvalRun,
    aggregate_seeds,
    build_report,
)
from .metrics import ConfusionMatrix, accuracy, confusion
from .reference import compare_to_reference, load_reference, reference_cell
from .runner import run_eval, run_once, report_json, report_markdown, write_reports

__all__ = [
    "AggregateReport",
    "ConfusionMatrix",
    "DEFAULT_SEEDS",
    "EvalRun",
    "accuracy",
    "aggregate_seeds",
    "build_report",
    "compare_to_reference",
    "confusion",
    "load_reference",
    "reference_cell",
    "report_json",
    "report_markdown",
    "run_eval",
    "run_once",
    "write_reports",
]
