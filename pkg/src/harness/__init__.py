"""Experiment orchestration: configs, runs, summaries and exports."""

from .config import MODEL_KNOWLEDGE, ExperimentConfig
from .export import read_instance, reports_to_json, write_csv, write_generated, write_json, write_summary_csv
from .runner import bound_ratio, default_registry, reference_bound, run_experiment, run_single
from .summary import SUMMARY_COLUMNS, RunSummary, summarize, summarize_by_config

__all__ = [
    "ExperimentConfig",
    "MODEL_KNOWLEDGE",
    "RunSummary",
    "SUMMARY_COLUMNS",
    "bound_ratio",
    "default_registry",
    "read_instance",
    "reference_bound",
    "reports_to_json",
    "run_experiment",
    "run_single",
    "summarize",
    "summarize_by_config",
    "write_csv",
    "write_generated",
    "write_json",
    "write_summary_csv",
]
