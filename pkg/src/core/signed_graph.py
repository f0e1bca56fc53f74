"""Signed query graph: vertices joined by +1/-1 query answers."""

from typing import Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np


class SignedGraph:
    """
    Undirected graph whose edges carry a weight in {+1, -1}.

    The weight of a pair is the oracle's answer for that pair (``+1`` for
    "same cluster"). Pairs that were never queried have no edge and count as
    weight 0 in every objective. Self-loops are rejected.

    The graph grows in place as an algorithm queries new pairs; solvers work
    on the dense snapshot returned by ``weight_matrix``.
    """

    def __init__(self, vertices: Iterable[int] = ()):
        self._graph = nx.Graph()
        self._graph.add_nodes_from(int(v) for v in vertices)

    @property
    def vertices(self) -> Tuple[int, ...]:
        """Vertex ids in ascending order."""
        return tuple(sorted(self._graph.nodes))

    def __len__(self) -> int:
        return self._graph.number_of_nodes()

    def __contains__(self, v: int) -> bool:
        return v in self._graph

    def add_vertex(self, v: int) -> None:
        self._graph.add_node(int(v))

    def set_weight(self, u: int, v: int, weight: int) -> None:
        """
        Record the signed answer for the pair ``(u, v)``.

        Raises:
            ValueError: On self-loops, weights outside {+1, -1}, or
                endpoints that are not vertices of the graph
        """
        if u == v:
            raise ValueError(f"Self-loop on vertex {u} is not allowed")
        if weight not in (1, -1):
            raise ValueError(f"Edge weight must be +1 or -1, got {weight}")
        if u not in self._graph or v not in self._graph:
            raise ValueError(f"Both endpoints of ({u}, {v}) must be graph vertices")
        self._graph.add_edge(int(u), int(v), weight=int(weight))

    def weight(self, u: int, v: int) -> int:
        """Weight of the pair, 0 if it was never recorded."""
        data = self._graph.get_edge_data(u, v)
        return 0 if data is None else data["weight"]

    def edges(self) -> List[Tuple[int, int, int]]:
        """All recorded pairs as ``(u, v, weight)`` with ``u < v``."""
        return sorted(
            (min(u, v), max(u, v), d["weight"]) for u, v, d in self._graph.edges(data=True)
        )

    def remove_vertices(self, vertices: Iterable[int]) -> None:
        self._graph.remove_nodes_from(list(vertices))

    def negative_pairs(self) -> int:
        """Number of recorded pairs with weight -1."""
        return sum(1 for _, _, w in self._graph.edges(data="weight") if w == -1)

    def weight_matrix(self, order: Sequence[int] = None) -> Tuple[Tuple[int, ...], np.ndarray]:
        """
        Dense symmetric weight matrix with a zero diagonal.

        Args:
            order: Vertex order of the rows; defaults to ascending ids

        Returns:
            Tuple of the vertex order and an ``int64`` matrix
        """
        nodes = tuple(order) if order is not None else self.vertices
        if not nodes:
            return nodes, np.zeros((0, 0), dtype=np.int64)
        matrix = nx.to_numpy_array(self._graph, nodelist=list(nodes), weight="weight", dtype=float)
        return nodes, matrix.astype(np.int64)

    def subgraph_weight(self, members: Iterable[int]) -> int:
        """Sum of weights over all unordered pairs inside ``members``."""
        return int(self._graph.subgraph(members).size(weight="weight"))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, vertices: Sequence[int] = None) -> "SignedGraph":
        """
        Build a graph from a symmetric matrix of {+1, -1, 0} entries.

        Zero off-diagonal entries are left as unrecorded pairs.
        """
        size = matrix.shape[0]
        ids = list(vertices) if vertices is not None else list(range(size))
        graph = cls(ids)
        for i in range(size):
            for j in range(i + 1, size):
                w = int(matrix[i, j])
                if w:
                    graph.set_weight(ids[i], ids[j], w)
        return graph

    def __repr__(self) -> str:
        return f"SignedGraph(vertices={len(self)}, pairs={self._graph.number_of_edges()})"
