"""Clustering output type and comparison against the ground truth."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .instance import Instance


@dataclass(frozen=True)
class Clustering:
    """
    A partition of the vertices ``0 .. n-1`` returned by an algorithm.

    Cluster ids are dense from 0. Two clusterings compare equal when their
    assignments are identical; use ``canonical_form`` or
    ``compare_clusterings`` to compare up to relabeling.

    Attributes:
        assignment: Cluster id per vertex
        unresolved: Vertices the algorithm could not place reliably
            (reported by the polynomial-time faulty variant)
        solver_flags: Free-form notes from the solvers used in the run,
            e.g. ``"ml:heuristic"``
    """

    assignment: Tuple[int, ...]
    unresolved: FrozenSet[int] = field(default=frozenset(), compare=False)
    solver_flags: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(x) for x in self.assignment))
        if not self.assignment:
            raise ValueError("Clustering must cover at least one vertex")
        used = set(self.assignment)
        if min(used) < 0 or used != set(range(len(used))):
            raise ValueError(
                f"Cluster ids must be dense from 0, got ids {sorted(used)}"
            )

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def num_clusters(self) -> int:
        return max(self.assignment) + 1

    def blocks(self) -> List[List[int]]:
        """Return the member list of every cluster, indexed by cluster id."""
        out: List[List[int]] = [[] for _ in range(self.num_clusters)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def canonical_form(self) -> Tuple[Tuple[int, ...], ...]:
        """Clusters as sorted tuples, ordered by their minimum vertex id."""
        return tuple(sorted((tuple(b) for b in self.blocks()), key=lambda b: b[0]))

    @classmethod
    def from_blocks(
        cls,
        blocks: Iterable[Iterable[int]],
        n: int,
        unresolved: Iterable[int] = (),
        solver_flags: Sequence[str] = (),
    ) -> "Clustering":
        """
        Build a clustering from disjoint vertex sets covering ``0 .. n-1``.

        Clusters are numbered in order of their minimum vertex id.

        Raises:
            ValueError: If the blocks overlap, are empty or leave a vertex out
        """
        assignment = [-1] * n
        ordered = sorted((sorted(b) for b in blocks), key=lambda b: b[0] if b else -1)
        for cid, block in enumerate(ordered):
            if not block:
                raise ValueError("Clustering blocks must be non-empty")
            for v in block:
                if not 0 <= v < n:
                    raise ValueError(f"Vertex {v} out of range [0, {n})")
                if assignment[v] != -1:
                    raise ValueError(f"Vertex {v} assigned to more than one cluster")
                assignment[v] = cid
        missing = [v for v, c in enumerate(assignment) if c == -1]
        if missing:
            raise ValueError(f"Vertices not assigned to any cluster: {missing[:10]}")
        return cls(tuple(assignment), frozenset(unresolved), tuple(solver_flags))

    def to_dict(self) -> Dict[str, Any]:
        return {"assignment": list(self.assignment)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Clustering":
        return cls(tuple(data["assignment"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def compare_clusterings(
    found: Clustering, truth: Instance, size_threshold: int = 1
) -> Tuple[bool, float]:
    """
    Compare an algorithm's output with the hidden ground truth.

    Args:
        found: The clustering returned by an algorithm
        truth: The ground-truth instance
        size_threshold: Only truth clusters at least this large count
            towards the recall

    Returns:
        Tuple[bool, float]: ``(exact, big_cluster_recall)`` where ``exact``
        is True iff the partitions agree up to relabeling, and the recall is
        the fraction of truth clusters of size >= ``size_threshold`` that
        appear verbatim as a found cluster (1.0 if there are none)

    Raises:
        ValueError: If the two sides cover different vertex counts
    """
    if found.n != truth.n:
        raise ValueError(
            f"Clustering covers {found.n} vertices but the instance has {truth.n}"
        )
    found_blocks = set(found.canonical_form())
    truth_blocks = sorted((tuple(b) for b in truth.clusters()), key=lambda b: b[0])
    exact = found_blocks == set(truth_blocks)

    big = [b for b in truth_blocks if len(b) >= size_threshold]
    if not big:
        return exact, 1.0
    hits = sum(1 for b in big if b in found_blocks)
    return exact, hits / len(big)
