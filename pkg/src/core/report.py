"""Cost and accuracy record of one algorithm run."""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

# Versioned CSV layout; append new columns only at the end.
CSV_COLUMNS: List[str] = [
    "algorithm",
    "n",
    "k",
    "p",
    "seed",
    "queries",
    "rounds",
    "exact",
    "recall",
    "bound_ratio",
    "wall_time",
]


@dataclass(frozen=True)
class RunReport:
    """
    Result of running one algorithm on one seeded instance.

    ``bound_ratio`` is ``query_count`` divided by the lower-bound reference
    value that applies to the algorithm; it is ``nan`` when no bound applies
    and 0 when the reference value is infinite.
    """

    algorithm: str
    n: int
    k: int
    p: float
    query_count: int
    round_count: int
    exact_recovery: bool
    big_cluster_recall: float
    bound_ratio: float
    wall_time: float
    seed: int
    side_info_reads: int = 0
    per_phase_counts: Dict[str, int] = field(default_factory=dict)
    per_round_sizes: List[int] = field(default_factory=list)
    solver_flags: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not 0.0 <= self.big_cluster_recall <= 1.0:
            raise ValueError(
                f"big_cluster_recall must lie in [0, 1], got {self.big_cluster_recall}"
            )
        if not math.isnan(self.bound_ratio) and self.bound_ratio < 0:
            raise ValueError(f"bound_ratio must be non-negative, got {self.bound_ratio}")

    def csv_row(self) -> List[str]:
        """Row in ``CSV_COLUMNS`` order with fixed number formatting."""
        return [
            self.algorithm,
            str(self.n),
            str(self.k),
            f"{self.p:.6g}",
            str(self.seed),
            str(self.query_count),
            str(self.round_count),
            "1" if self.exact_recovery else "0",
            f"{self.big_cluster_recall:.6f}",
            f"{self.bound_ratio:.6f}",
            f"{self.wall_time:.4f}",
        ]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if math.isnan(self.bound_ratio):
            data["bound_ratio"] = None
        return data
