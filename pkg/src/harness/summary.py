"""Aggregate run reports into per-configuration statistics."""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..core.report import RunReport

SUMMARY_COLUMNS: List[str] = [
    "algorithm",
    "n",
    "k",
    "p",
    "runs",
    "recovery_rate",
    "queries_mean",
    "queries_std",
    "rounds_mean",
    "rounds_std",
    "bound_ratio_mean",
    "recall_mean",
]


@dataclass(frozen=True)
class RunSummary:
    """
    Statistics over the runs of one (algorithm, n, k, p) configuration.

    Standard deviations are population deviations, 0 for a single run.
    ``bound_ratio_mean`` ignores runs without a bound and is nan if none has one.
    """

    algorithm: str
    n: int
    k: int
    p: float
    runs: int
    recovery_rate: float
    queries_mean: float
    queries_std: float
    rounds_mean: float
    rounds_std: float
    bound_ratio_mean: float
    recall_mean: float

    def csv_row(self) -> List[str]:
        return [
            self.algorithm,
            str(self.n),
            str(self.k),
            f"{self.p:.6g}",
            str(self.runs),
            f"{self.recovery_rate:.6f}",
            f"{self.queries_mean:.3f}",
            f"{self.queries_std:.3f}",
            f"{self.rounds_mean:.3f}",
            f"{self.rounds_std:.3f}",
            f"{self.bound_ratio_mean:.6f}",
            f"{self.recall_mean:.6f}",
        ]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if math.isnan(self.bound_ratio_mean):
            data["bound_ratio_mean"] = None
        return data


def _config_key(report: RunReport) -> Tuple[str, int, int, float]:
    return (report.algorithm, report.n, report.k, report.p)


def summarize(reports: Sequence[RunReport]) -> RunSummary:
    """
    Summarise reports of a single configuration.

    Raises:
        ValueError: If ``reports`` is empty or mixes configurations
    """
    if not reports:
        raise ValueError("Cannot summarize an empty list of reports")
    keys = {_config_key(r) for r in reports}
    if len(keys) > 1:
        raise ValueError(f"Reports mix {len(keys)} configurations; use summarize_by_config")

    queries = np.array([r.query_count for r in reports], dtype=float)
    rounds = np.array([r.round_count for r in reports], dtype=float)
    ratios = np.array([r.bound_ratio for r in reports], dtype=float)
    finite = ratios[~np.isnan(ratios)]
    first = reports[0]
    return RunSummary(
        algorithm=first.algorithm,
        n=first.n,
        k=first.k,
        p=first.p,
        runs=len(reports),
        recovery_rate=sum(r.exact_recovery for r in reports) / len(reports),
        queries_mean=float(queries.mean()),
        queries_std=float(queries.std()),
        rounds_mean=float(rounds.mean()),
        rounds_std=float(rounds.std()),
        bound_ratio_mean=float(finite.mean()) if finite.size else math.nan,
        recall_mean=float(np.mean([r.big_cluster_recall for r in reports])),
    )


def summarize_by_config(reports: Sequence[RunReport]) -> List[RunSummary]:
    """One summary per (algorithm, n, k, p), in order of first appearance."""
    if not reports:
        raise ValueError("Cannot summarize an empty list of reports")
    groups: Dict[Tuple[str, int, int, float], List[RunReport]] = {}
    for report in reports:
        groups.setdefault(_config_key(report), []).append(report)
    return [summarize(group) for group in groups.values()]
