"""Maximum-likelihood partition of a signed graph and related objectives."""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..core.clustering import Clustering
from ..core.signed_graph import SignedGraph
from .config import FaultyConfig
from .subgraph import max_weight_subgraph

logger = logging.getLogger(__name__)

Blocks = Sequence[Sequence[int]]


def _blocks_of(partition: Union[Clustering, Blocks]) -> List[List[int]]:
    if isinstance(partition, Clustering):
        return partition.blocks()
    return [list(b) for b in partition]


def ml_objective(graph: SignedGraph, partition: Union[Clustering, Blocks]) -> int:
    """Sum of signed weights over the unordered pairs inside each block."""
    return sum(graph.subgraph_weight(block) for block in _blocks_of(partition))


def corrclust_objective(graph: SignedGraph, partition: Union[Clustering, Blocks]) -> int:
    """
    Agreements of a partition with the recorded answers: +1 pairs inside a
    block plus -1 pairs across blocks.

    Equals ``ml_objective`` plus the number of -1 pairs of the graph.
    """
    label = {}
    for cid, block in enumerate(_blocks_of(partition)):
        for v in block:
            label[v] = cid
    agree = 0
    for u, v, w in graph.edges():
        same = label[u] == label[v]
        if (w == 1 and same) or (w == -1 and not same):
            agree += 1
    return agree


def exact_partition(matrix: np.ndarray) -> Tuple[List[List[int]], int]:
    """
    Best partition by enumerating restricted growth strings.

    Vertex i joins an existing block or opens a new one; a branch is cut
    when its weight plus the positive weight from every later vertex to all
    earlier vertices cannot beat the incumbent.

    Returns:
        Tuple of the blocks (row indices) and the objective
    """
    m = matrix.shape[0]
    w = matrix.tolist()
    positive_back = [sum(max(0, w[i][j]) for j in range(i)) for i in range(m)]
    # rest[i]: optimistic gain of placing rows i..m-1
    rest = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        rest[i] = rest[i + 1] + positive_back[i]

    blocks: List[List[int]] = []
    best = {"weight": None, "blocks": []}

    def visit(i: int, weight: int) -> None:
        if best["weight"] is not None and weight + rest[i] <= best["weight"]:
            return
        if i == m:
            best.update(weight=weight, blocks=[list(b) for b in blocks])
            return
        row = w[i]
        for block in blocks:
            gain = sum(row[j] for j in block)
            block.append(i)
            visit(i + 1, weight + gain)
            block.pop()
        blocks.append([i])
        visit(i + 1, weight)
        blocks.pop()

    visit(0, 0)
    return best["blocks"], best["weight"] or 0


def peel(graph: SignedGraph, cfg: FaultyConfig, force_heuristic: bool = False) -> Tuple[List[List[int]], List[str]]:
    """
    Repeatedly remove the heaviest subgraph as one block while its weight
    is positive; what remains becomes singletons.

    Returns:
        Tuple of the blocks and the solver methods used
    """
    work = SignedGraph(graph.vertices)
    for u, v, weight in graph.edges():
        work.set_weight(u, v, weight)
    blocks: List[List[int]] = []
    methods: List[str] = []
    while len(work):
        result = max_weight_subgraph(work, cfg, force_heuristic)
        methods.append(result.method)
        if result.weight <= 0:
            break
        blocks.append(list(result.members))
        work.remove_vertices(result.members)
    blocks.extend([v] for v in work.vertices)
    return blocks, methods


def ml_estimate_blocks(graph: SignedGraph, cfg: FaultyConfig) -> Tuple[List[List[int]], str]:
    """
    ML partition of the graph's vertices as blocks of vertex ids.

    Returns:
        Tuple of the blocks and "exact", "peel" (exact extractions) or "heuristic"
    """
    nodes = graph.vertices
    if not nodes:
        return [], "exact"
    if len(nodes) <= cfg.exact_partition_limit:
        _, matrix = graph.weight_matrix(nodes)
        rows, _ = exact_partition(matrix)
        return [[nodes[r] for r in block] for block in rows], "exact"
    blocks, methods = peel(graph, cfg)
    method = "heuristic" if "heuristic" in methods else "peel"
    logger.debug("Peeled %d vertices into %d blocks", len(nodes), len(blocks))
    return blocks, method


def ml_estimate(graph: SignedGraph, cfg: FaultyConfig) -> Clustering:
    """
    ML partition of a graph on the vertices ``0 .. n-1``.

    Exact for at most ``cfg.exact_partition_limit`` vertices, peeling
    otherwise; the method is recorded in ``solver_flags``.

    Raises:
        ValueError: If the vertices are not ``0 .. n-1``
    """
    nodes = graph.vertices
    if nodes != tuple(range(len(nodes))):
        raise ValueError("ml_estimate needs a graph on the vertices 0 .. n-1; use ml_estimate_blocks")
    blocks, method = ml_estimate_blocks(graph, cfg)
    return Clustering.from_blocks(blocks, len(nodes), solver_flags=(f"ml:{method}",))

