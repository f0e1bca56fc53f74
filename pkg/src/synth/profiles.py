"""Cluster size profiles."""

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

PROFILE_KINDS = ("balanced", "skewed", "powerlaw")


@dataclass(frozen=True)
class SizeProfile:
    """
    How the n vertices are split into k cluster sizes.

    Sizes are deterministic in (n, k); only the vertex labelling is random.

    Attributes:
        kind: "balanced", "skewed" or "powerlaw"
        ratio: Largest to smallest weight for "skewed"
        alpha: Exponent of the size weights i^-alpha for "powerlaw"
    """

    kind: str = "balanced"
    ratio: float = 4.0
    alpha: float = 1.5

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(
                f"Unsupported size profile '{self.kind}', expected one of {', '.join(PROFILE_KINDS)}"
            )
        if self.kind == "skewed" and self.ratio < 1:
            raise ValueError(f"Skew ratio must be at least 1, got {self.ratio}")
        if self.kind == "powerlaw" and self.alpha <= 0:
            raise ValueError(f"Power-law exponent must be positive, got {self.alpha}")

    @classmethod
    def parse(cls, text: str) -> "SizeProfile":
        """
        Parse "balanced", "skewed:<ratio>" or "powerlaw:<alpha>".

        Raises:
            ValueError: If the descriptor is malformed
        """
        kind, _, arg = text.strip().partition(":")
        try:
            if kind == "skewed":
                return cls("skewed", ratio=float(arg) if arg else 4.0)
            if kind == "powerlaw":
                return cls("powerlaw", alpha=float(arg) if arg else 1.5)
        except ValueError as e:
            raise ValueError(f"Invalid size profile '{text}': {e}") from e
        if arg:
            raise ValueError(f"Invalid size profile '{text}'")
        return cls(kind)

    def __str__(self) -> str:
        if self.kind == "skewed":
            return f"skewed:{self.ratio:g}"
        if self.kind == "powerlaw":
            return f"powerlaw:{self.alpha:g}"
        return "balanced"

    def _weights(self, k: int) -> np.ndarray:
        if self.kind == "skewed":
            if k == 1:
                return np.ones(1)
            return self.ratio ** (np.arange(k)[::-1] / (k - 1))
        return np.arange(1, k + 1, dtype=float) ** (-self.alpha)

    def sizes(self, n: int, k: int) -> List[int]:
        """
        Cluster sizes in nonincreasing order, each at least 1, summing to n.

        The balanced profile gives the remainder of n / k one vertex per
        cluster. The other profiles give every cluster one vertex and split
        the rest in proportion to their weights by largest remainder.

        Raises:
            ValueError: If k is not in [1, n]
        """
        if not 1 <= k <= n:
            raise ValueError(f"Cannot split n={n} vertices into k={k} non-empty clusters")
        if self.kind == "balanced":
            base, extra = divmod(n, k)
            return [base + 1 if i < extra else base for i in range(k)]

        weights = self._weights(k)
        share = (n - k) * weights / weights.sum()
        floors = np.floor(share).astype(int)
        leftover = (n - k) - int(floors.sum())
        order = np.argsort(-(share - floors), kind="stable")
        floors[order[:leftover]] += 1
        return sorted((1 + floors).tolist(), reverse=True)


def regimes(sizes: Sequence[int]) -> Dict[str, bool]:
    """
    Which size regimes of the faulty-oracle lower bound a size vector meets.

    Returns:
        Dict[str, bool]: ``max_le_4n_over_k`` and ``min_ge_n_over_20k``
    """
    n, k = sum(sizes), len(sizes)
    return {
        "max_le_4n_over_k": max(sizes) <= 4 * n / k,
        "min_ge_n_over_20k": min(sizes) >= n / (20 * k),
    }
