"""Heaviest subgraph of a signed graph.

The weight of a vertex set S is the sum of the signed weights of the pairs
inside S. Small graphs are solved exactly by branch and bound; larger ones
by greedy growth and local search from several seeds.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core.signed_graph import SignedGraph
from .config import FaultyConfig

logger = logging.getLogger(__name__)

EXACT = "exact"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class SubgraphResult:
    """Vertex set (ascending), its weight and the solver that produced it."""

    members: Tuple[int, ...]
    weight: int
    method: str

    def __len__(self) -> int:
        return len(self.members)


def _key(weight: int, members: Sequence[int]) -> Tuple[int, int, Tuple[int, ...]]:
    # larger is better: weight, then size, then lexicographically smaller set
    return (weight, len(members), tuple(-x for x in members))


def exact_subgraph(matrix: np.ndarray) -> Tuple[List[int], int]:
    """
    Branch and bound over vertex inclusion, include branch first.

    The optimistic bound of a node is its weight plus, for every undecided
    vertex, its positive gain towards the chosen set, plus the positive
    pairs among the undecided vertices. Only strict improvements in
    (weight, size) replace the incumbent, so among equal optima the first
    one reached, the lexicographically smallest, is kept.

    Args:
        matrix: Symmetric integer weight matrix with a zero diagonal

    Returns:
        Tuple of the chosen row indices and their weight
    """
    m = matrix.shape[0]
    w = matrix.tolist()
    positive = np.triu(np.maximum(matrix, 0), k=1)
    # suffix[i]: positive weight among rows i..m-1
    suffix = [int(positive[i:, i:].sum()) for i in range(m)] + [0]

    best = {"weight": 0, "size": 0, "set": []}
    chosen: List[int] = []

    def visit(i: int, weight: int, gains: List[int]) -> None:
        undecided = m - i
        if i == m:
            if (weight, len(chosen)) > (best["weight"], best["size"]):
                best.update(weight=weight, size=len(chosen), set=list(chosen))
            return
        bound = weight + sum(g for g in gains[i:] if g > 0) + suffix[i]
        if (bound, len(chosen) + undecided) <= (best["weight"], best["size"]):
            return
        row = w[i]
        chosen.append(i)
        visit(i + 1, weight + gains[i], [g + r for g, r in zip(gains, row)])
        chosen.pop()
        visit(i + 1, weight, gains)

    if m:
        visit(0, 0, [0] * m)
    return best["set"], best["weight"]


def _local_search(matrix: np.ndarray, start: int, budget: int) -> np.ndarray:
    m = matrix.shape[0]
    inside = np.zeros(m, dtype=bool)
    inside[start] = True
    gains = matrix[start].astype(np.int64).copy()
    moves = 0
    while moves < budget:
        outside_gain = np.where(inside, np.iinfo(np.int64).min, gains)
        add = int(outside_gain.argmax())
        if outside_gain[add] > 0:
            inside[add] = True
            gains += matrix[add]
            moves += 1
            continue
        inside_gain = np.where(inside, gains, np.iinfo(np.int64).max)
        drop = int(inside_gain.argmin())
        if inside_gain[drop] < 0:
            inside[drop] = False
            gains -= matrix[drop]
            moves += 1
            continue
        # 1-swap: drop a, add b; change = gains[b] - matrix[a, b] - gains[a]
        ins, outs = np.flatnonzero(inside), np.flatnonzero(~inside)
        if ins.size == 0 or outs.size == 0:
            break
        delta = gains[outs][None, :] - matrix[np.ix_(ins, outs)] - gains[ins][:, None]
        a, b = np.unravel_index(int(delta.argmax()), delta.shape)
        if delta[a, b] <= 0:
            break
        inside[ins[a]] = False
        gains -= matrix[ins[a]]
        inside[outs[b]] = True
        gains += matrix[outs[b]]
        moves += 1
    return inside


def heuristic_subgraph(matrix: np.ndarray, restarts: int, budget: int) -> Tuple[List[int], int]:
    """
    Greedy growth plus add, drop and 1-swap moves from the vertices of
    highest positive degree; the best local optimum over all seeds wins.
    """
    m = matrix.shape[0]
    if m == 0:
        return [], 0
    positive_degree = np.maximum(matrix, 0).sum(axis=1)
    seeds = np.argsort(-positive_degree, kind="stable")[: max(1, restarts)]
    best_rows: List[int] = []
    best_key = _key(0, [])
    for seed in seeds.tolist():
        inside = _local_search(matrix, seed, budget)
        rows = np.flatnonzero(inside).tolist()
        weight = int(matrix[np.ix_(rows, rows)].sum() // 2)
        key = _key(weight, rows)
        if key > best_key:
            best_rows, best_key = rows, key
    return best_rows, best_key[0]


def max_weight_subgraph(graph: SignedGraph, cfg: FaultyConfig, force_heuristic: bool = False) -> SubgraphResult:
    """
    Heaviest vertex set of ``graph``.

    Graphs with at most ``cfg.exact_subgraph_limit`` vertices are solved
    exactly unless ``force_heuristic`` is set. The empty set (weight 0) is
    admissible; ties go to the larger set, then to the lexicographically
    smaller one.
    """
    nodes, matrix = graph.weight_matrix()
    if not nodes:
        return SubgraphResult((), 0, EXACT)
    if len(nodes) <= cfg.exact_subgraph_limit and not force_heuristic:
        rows, weight = exact_subgraph(matrix)
        method = EXACT
    else:
        rows, weight = heuristic_subgraph(matrix, cfg.restarts, cfg.local_search_budget)
        method = HEURISTIC
    members = tuple(sorted(nodes[r] for r in rows))
    logger.debug("Extracted %d of %d vertices, weight %d (%s)", len(members), len(nodes), weight, method)
    return SubgraphResult(members, int(weight), method)
