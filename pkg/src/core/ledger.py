"""Query accounting for one oracle session."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Set, Tuple

Pair = Tuple[int, int]


def pair_key(u: int, v: int) -> Pair:
    """Unordered pair as a ``(min, max)`` tuple."""
    return (u, v) if u < v else (v, u)


@dataclass
class QueryLedger:
    """
    Record of distinct pairs asked and batch rounds consumed.

    Re-asking a pair never increases ``query_count``. Each distinct pair is
    also attributed to the phase that was active when it was first asked.
    """

    asked: Set[Pair] = field(default_factory=set)
    per_round_sizes: List[int] = field(default_factory=list)
    per_phase_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def query_count(self) -> int:
        return len(self.asked)

    @property
    def round_count(self) -> int:
        return len(self.per_round_sizes)

    def record(self, u: int, v: int, phase: str = "default") -> bool:
        """
        Record one asked pair.

        Returns:
            bool: True if the pair had not been asked before
        """
        key = pair_key(u, v)
        if key in self.asked:
            return False
        self.asked.add(key)
        self.per_phase_counts[phase] = self.per_phase_counts.get(phase, 0) + 1
        return True

    def record_round(self, size: int) -> None:
        self.per_round_sizes.append(size)

    def has(self, u: int, v: int) -> bool:
        return pair_key(u, v) in self.asked

    def phase_count(self, phase: str) -> int:
        return self.per_phase_counts.get(phase, 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "query_count": self.query_count,
            "round_count": self.round_count,
            "per_round_sizes": list(self.per_round_sizes),
            "per_phase_counts": dict(sorted(self.per_phase_counts.items())),
        }
