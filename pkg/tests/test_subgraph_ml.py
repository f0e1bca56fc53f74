"""Unit tests for the heaviest-subgraph and maximum-likelihood solvers."""

import itertools

import numpy as np
import pytest

from src.algorithms.config import FaultyConfig
from src.algorithms.ml import (
    corrclust_objective,
    exact_partition,
    ml_estimate,
    ml_estimate_blocks,
    ml_objective,
    peel,
)
from src.algorithms.subgraph import EXACT, HEURISTIC, exact_subgraph, heuristic_subgraph, max_weight_subgraph
from src.core.signed_graph import SignedGraph


def random_signed_matrix(rng, m, density=0.8):
    upper = rng.choice([-1, 1], size=(m, m)) * (rng.random((m, m)) < density)
    matrix = np.triu(upper, k=1)
    return (matrix + matrix.T).astype(np.int64)


def brute_force_subgraph(matrix):
    m = matrix.shape[0]
    best = 0
    for size in range(1, m + 1):
        for rows in itertools.combinations(range(m), size):
            best = max(best, int(matrix[np.ix_(rows, rows)].sum() // 2))
    return best


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


def block_weight(matrix, blocks):
    return sum(int(matrix[np.ix_(b, b)].sum() // 2) for b in blocks)


def planted_graph(sizes, flips=()):
    """Complete signed graph: +1 inside the planted blocks, -1 across, with ``flips`` negated."""
    labels = [c for c, size in enumerate(sizes) for _ in range(size)]
    n = len(labels)
    graph = SignedGraph(range(n))
    for u, v in itertools.combinations(range(n), 2):
        weight = 1 if labels[u] == labels[v] else -1
        if (u, v) in flips:
            weight = -weight
        graph.set_weight(u, v, weight)
    return graph, labels


def noisy_planted_graph(rng, sizes, p):
    """Planted blocks on shuffled vertex ids with every pair's sign flipped with probability ``p``."""
    labels = rng.permutation([c for c, size in enumerate(sizes) for _ in range(size)])
    n = len(labels)
    graph = SignedGraph(range(n))
    for u, v in itertools.combinations(range(n), 2):
        weight = 1 if labels[u] == labels[v] else -1
        if rng.random() < p:
            weight = -weight
        graph.set_weight(u, v, weight)
    return graph, labels


@pytest.fixture
def cfg():
    return FaultyConfig(lam=0.3)


class TestExactSubgraph:
    """Test suite for the branch-and-bound subgraph solver."""

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        matrix = random_signed_matrix(rng, 9)
        rows, weight = exact_subgraph(matrix)
        assert weight == brute_force_subgraph(matrix)
        assert block_weight(matrix, [rows]) == weight

    def test_all_negative_gives_empty_set(self):
        matrix = -(np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64))
        assert exact_subgraph(matrix) == ([], 0)

    def test_prefers_larger_set_on_ties(self):
        # {0, 1} and {0, 1, 2} both weigh 1
        matrix = np.array([[0, 1, 1], [1, 0, -1], [1, -1, 0]], dtype=np.int64)
        rows, weight = exact_subgraph(matrix)
        assert weight == 1
        assert rows == [0, 1, 2]

    @pytest.mark.parametrize("seed", range(6))
    def test_heuristic_never_beats_exact(self, seed):
        rng = np.random.default_rng(100 + seed)
        matrix = random_signed_matrix(rng, 10)
        rows, weight = heuristic_subgraph(matrix, restarts=4, budget=200)
        assert weight <= exact_subgraph(matrix)[1]
        assert block_weight(matrix, [rows]) == weight


class TestMaxWeightSubgraph:
    """Test suite for max_weight_subgraph."""

    def test_planted_block_exact(self, cfg):
        graph, _ = planted_graph([6, 3, 2])
        result = max_weight_subgraph(graph, cfg)
        assert result.members == (0, 1, 2, 3, 4, 5)
        assert result.weight == 15
        assert result.method == EXACT

    def test_planted_block_heuristic(self, cfg):
        graph, _ = planted_graph([6, 3, 2])
        result = max_weight_subgraph(graph, cfg, force_heuristic=True)
        assert result.members == (0, 1, 2, 3, 4, 5)
        assert result.method == HEURISTIC

    def test_large_graph_uses_heuristic(self, cfg):
        graph, _ = planted_graph([12, 8])
        result = max_weight_subgraph(graph, cfg)
        assert result.method == HEURISTIC
        assert result.members == tuple(range(12))
        assert len(result) == 12

    def test_vertex_ids_preserved(self, cfg):
        graph = SignedGraph([10, 20, 30])
        graph.set_weight(10, 30, 1)
        graph.set_weight(20, 30, -1)
        result = max_weight_subgraph(graph, cfg)
        assert result.members == (10, 30)

    def test_empty_graph(self, cfg):
        assert max_weight_subgraph(SignedGraph([]), cfg).members == ()

    @pytest.mark.parametrize("sizes, method", [([8, 2, 2, 2], EXACT), ([12, 3, 3, 3, 3], HEURISTIC)])
    def test_noisy_planted_cluster_recovered(self, cfg, sizes, method):
        hits = 0
        for trial in range(20):
            rng = np.random.default_rng(500 + trial)
            graph, labels = noisy_planted_graph(rng, sizes, 0.1)
            result = max_weight_subgraph(graph, cfg)
            assert result.method == method
            found = {int(labels[v]) for v in result.members}
            hits += found == {0} and len(result) >= sizes[0] - 2
        assert hits >= 19


class TestMaximumLikelihood:
    """Test suite for the ML partition and its objectives."""

    @pytest.mark.parametrize("seed", range(8))
    def test_exact_partition_matches_brute_force(self, seed):
        rng = np.random.default_rng(200 + seed)
        matrix = random_signed_matrix(rng, 7)
        blocks, weight = exact_partition(matrix)
        best = max(block_weight(matrix, p) for p in set_partitions(list(range(7))))
        assert weight == best
        assert block_weight(matrix, blocks) == weight
        assert sorted(v for b in blocks for v in b) == list(range(7))

    @pytest.mark.parametrize("seed", range(5))
    def test_corrclust_identity(self, seed):
        rng = np.random.default_rng(300 + seed)
        graph = SignedGraph.from_matrix(random_signed_matrix(rng, 8))
        partitions = [[[0, 1, 2], [3, 4], [5, 6, 7]], [[v] for v in range(8)], [list(range(8))]]
        for blocks in partitions:
            assert corrclust_objective(graph, blocks) == ml_objective(graph, blocks) + graph.negative_pairs()

    def test_ml_estimate_recovers_noisy_planted(self, cfg):
        graph, labels = planted_graph([4, 3, 2], flips={(0, 1), (4, 7)})
        found = ml_estimate(graph, cfg)
        assert found.solver_flags == ("ml:exact",)
        assert list(found.assignment) == labels

    def test_ml_estimate_peels_large_graphs(self, cfg):
        graph, labels = planted_graph([6, 4, 2], flips={(0, 3), (8, 9)})
        found = ml_estimate(graph, cfg)
        assert found.solver_flags == ("ml:peel",)
        assert list(found.assignment) == labels

    def test_ml_estimate_needs_dense_ids(self, cfg):
        graph = SignedGraph([1, 2])
        with pytest.raises(ValueError, match="0 .. n-1"):
            ml_estimate(graph, cfg)

    def test_blocks_keep_vertex_ids(self, cfg):
        graph = SignedGraph([5, 9, 11])
        graph.set_weight(5, 11, 1)
        graph.set_weight(5, 9, -1)
        blocks, method = ml_estimate_blocks(graph, cfg)
        assert method == "exact"
        assert sorted(sorted(b) for b in blocks) == [[5, 11], [9]]

    def test_peel_leaves_singletons(self, cfg):
        graph = SignedGraph([0, 1, 2])
        graph.set_weight(0, 1, -1)
        graph.set_weight(1, 2, -1)
        blocks, methods = peel(graph, cfg)
        assert sorted(blocks) == [[0], [1], [2]]
        assert methods == [EXACT]

    @pytest.mark.parametrize("seed", range(10))
    def test_exact_partition_at_least_peel(self, cfg, seed):
        rng = np.random.default_rng(400 + seed)
        matrix = random_signed_matrix(rng, 9)
        graph = SignedGraph.from_matrix(matrix)
        blocks, _ = peel(graph, cfg)
        assert exact_partition(matrix)[1] >= ml_objective(graph, blocks)
