"""Run-time constants for the faulty-oracle and batched algorithms."""

import math
from dataclasses import dataclass
from typing import Optional

from ..stats.thresholds import faulty_constants, panel_size


@dataclass(frozen=True)
class FaultyConfig:
    """
    Constants of a faulty-oracle run.

    Attributes:
        lam: Channel margin 1/2 - p, known to the algorithm
        desk_scale: Multiplier on c = 6 / lam^2
        exact_subgraph_limit: Largest graph the exact subgraph solver takes
        exact_partition_limit: Largest graph the exact partition solver takes
        restarts: Seeds tried by the heuristic subgraph solver
        local_search_budget: Improving moves per heuristic restart
    """

    lam: float
    desk_scale: float = 1.0
    exact_subgraph_limit: int = 14
    exact_partition_limit: int = 10
    restarts: int = 4
    local_search_budget: int = 200

    def __post_init__(self):
        faulty_constants(self.lam, self.desk_scale)
        if self.exact_subgraph_limit < 2:
            raise ValueError(f"exact_subgraph_limit must be at least 2, got {self.exact_subgraph_limit}")
        if self.exact_partition_limit < 2:
            raise ValueError(f"exact_partition_limit must be at least 2, got {self.exact_partition_limit}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be at least 1, got {self.restarts}")
        if self.local_search_budget < 0:
            raise ValueError(f"local_search_budget must be non-negative, got {self.local_search_budget}")

    @property
    def c(self) -> float:
        return faulty_constants(self.lam, self.desk_scale)[0]

    @property
    def c_prime(self) -> float:
        return faulty_constants(self.lam, self.desk_scale)[1]

    def panel(self, n: int) -> int:
        """Majority panel size and cluster acceptance size ceil(c ln n)."""
        return panel_size(n, self.c)

    @classmethod
    def from_params(cls, lam: float, **kwargs) -> "FaultyConfig":
        """Build from algorithm keyword arguments, ignoring unrelated keys."""
        fields = ("desk_scale", "exact_subgraph_limit", "exact_partition_limit", "restarts", "local_search_budget")
        chosen = {key: kwargs[key] for key in fields if kwargs.get(key) is not None}
        return cls(lam=lam, **chosen)


def default_sample_size(n: int) -> int:
    """ceil(sqrt(n log2 n)), at least 1."""
    if n < 2:
        return 1
    return max(1, math.ceil(math.sqrt(n * math.log2(n))))


@dataclass(frozen=True)
class RoundConfig:
    """
    Constants of a batched run.

    Attributes:
        cap: Largest number of queries per round
        sample_size: Vertices sampled for all-pairs querying
        seed: Seed of the sampling stream
        scorer: Membership scorer for side-information candidate selection
        faulty: Faulty-oracle constants, for the faulty scheme
    """

    cap: int
    sample_size: int
    seed: int = 0
    scorer: str = "average"
    faulty: Optional[FaultyConfig] = None

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError(f"Round cap must be at least 1, got {self.cap}")
        if self.sample_size < 1:
            raise ValueError(f"Sample size must be at least 1, got {self.sample_size}")
        if self.seed < 0:
            raise ValueError(f"Sampling seed must be non-negative, got {self.seed}")
