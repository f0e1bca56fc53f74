"""Ground-truth instance: a hidden partition of n vertices into k clusters."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class Instance:
    """
    Hidden ground truth of one simulated problem.

    Vertices are the dense integers ``0 .. n-1``; ``labels[v]`` is the
    cluster id of vertex ``v``. Algorithms never see an Instance directly,
    only an oracle session built around it.

    Attributes:
        n: Number of vertices
        k: Number of clusters
        labels: Cluster id per vertex, every id in ``[0, k)`` used at least once
        size_profile: Descriptor of how cluster sizes were drawn
        seed: Seed the instance was generated from, if any
    """

    n: int
    k: int
    labels: Tuple[int, ...]
    size_profile: str = "balanced"
    seed: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.n < 1:
            raise ValueError(f"Instance needs at least one vertex, got n={self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"Cluster count must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.labels) != self.n:
            raise ValueError(
                f"Instance has {len(self.labels)} labels for n={self.n} vertices"
            )
        used = set(self.labels)
        bad = [x for x in used if not 0 <= x < self.k]
        if bad:
            raise ValueError(f"Cluster labels out of range [0, {self.k}): {sorted(bad)}")
        if len(used) != self.k:
            missing = sorted(set(range(self.k)) - used)
            raise ValueError(f"Empty cluster ids in instance: {missing}")

    @property
    def cluster_sizes(self) -> List[int]:
        """Return the size of every cluster, indexed by cluster id."""
        sizes = [0] * self.k
        for label in self.labels:
            sizes[label] += 1
        return sizes

    def clusters(self) -> List[List[int]]:
        """Return the member list of every cluster, indexed by cluster id."""
        blocks: List[List[int]] = [[] for _ in range(self.k)]
        for v, label in enumerate(self.labels):
            blocks[label].append(v)
        return blocks

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "labels": list(self.labels),
            "size_profile": self.size_profile,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Instance":
        try:
            return cls(
                n=int(data["n"]),
                k=int(data["k"]),
                labels=tuple(data["labels"]),
                size_profile=str(data.get("size_profile", "balanced")),
                seed=data.get("seed"),
            )
        except KeyError as e:
            raise ValueError(f"Instance JSON is missing field {e}") from e

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))
