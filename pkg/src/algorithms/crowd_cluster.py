"""Membership-ranked clustering with a perfect oracle and side information.

Clusters are ranked by nonincreasing size. In every step the vertex whose
best-scoring cluster has the smallest rank is verified against that
cluster with one query. On failure the best cluster of each dyadic size
class among the larger clusters is tried, then every cluster not yet
checked; a vertex no cluster accepts opens a new one.
"""

import logging
from typing import Callable, Dict, List, Sequence, Set, Tuple

import numpy as np

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from .membership import MembershipScorer, MembershipTable

logger = logging.getLogger(__name__)


def rank_clusters(sizes: Sequence[int]) -> List[int]:
    """Cluster ids by nonincreasing size, older clusters first among equals."""
    return sorted(range(len(sizes)), key=lambda cid: (-sizes[cid], cid))


def dyadic_class(size: int, largest: int) -> int:
    """Class i of a cluster whose size lies in (largest / 2^i, largest / 2^(i-1)]."""
    return (largest // size).bit_length()


def dyadic_candidates(scores: np.ndarray, ranked: Sequence[int], sizes: Sequence[int], upto: int) -> List[int]:
    """
    Best-scoring cluster of every dyadic size class among the first ``upto`` ranks.

    Args:
        scores: Scores of one vertex, aligned with ``ranked``
        ranked: Cluster ids in rank order
        sizes: Cluster sizes indexed by id
        upto: Number of leading ranks to consider

    Returns:
        List[int]: One cluster id per class, classes in increasing order
    """
    if upto <= 0:
        return []
    largest = sizes[ranked[0]]
    best: Dict[int, int] = {}
    for rank in range(upto):
        cls = dyadic_class(sizes[ranked[rank]], largest)
        if cls not in best or scores[rank] > scores[best[cls]]:
            best[cls] = rank
    return [ranked[best[cls]] for cls in sorted(best)]


def select_vertex(scores: np.ndarray) -> Tuple[int, int]:
    """
    Pick the row whose maximum sits at the smallest column.

    Ties on the maximum go to the lowest column, ties between rows to the
    lowest row.

    Returns:
        Tuple[int, int]: ``(row, column)``
    """
    best = scores.argmax(axis=1)
    column = int(best.min())
    row = int(np.flatnonzero(best == column)[0])
    return row, column


def place_by_rank(
    v: int,
    scores: np.ndarray,
    ranked: Sequence[int],
    sizes: Sequence[int],
    j: int,
    ask: Callable[[int, int], bool],
    checked: Set[Tuple[int, int]],
    session,
) -> int:
    """
    Run the verify, dyadic and exhaustive stages for one vertex.

    ``ask(v, cid)`` is called at most once per cluster; it returns whether
    the cluster accepts v.

    Returns:
        int: Accepting cluster id, or -1 if none accepts
    """
    with session.phase("verify"):
        if (v, ranked[j]) not in checked and ask(v, ranked[j]):
            return ranked[j]
    with session.phase("dyadic"):
        for cid in dyadic_candidates(scores, ranked, sizes, j):
            if (v, cid) not in checked and ask(v, cid):
                return cid
    with session.phase("exhaustive"):
        for cid in ranked:
            if (v, cid) not in checked and ask(v, cid):
                return cid
    return -1


def alg1_lasvegas(session, side_info, scorer: MembershipScorer) -> Clustering:
    """
    Exact clustering with a perfect oracle, guided by side information.

    Every inclusion is certified by a +1 answer and every new cluster by
    -1 answers from all existing clusters.
    """
    n = session.n
    table = MembershipTable(side_info, scorer)
    table.add_cluster([0])
    checked: Set[Tuple[int, int]] = set()
    unassigned = list(range(1, n))

    def ask(v: int, cid: int) -> bool:
        checked.add((v, cid))
        return session.query(v, table.members(cid)[0]) == 1

    while unassigned:
        sizes = table.sizes().tolist()
        ranked = rank_clusters(sizes)
        scores = table.scores(unassigned, ranked)
        row, j = select_vertex(scores)
        v = unassigned.pop(row)
        target = place_by_rank(v, scores[row], ranked, sizes, j, ask, checked, session)
        if target >= 0:
            table.add_member(target, v)
        else:
            table.add_cluster([v])
            logger.debug("Vertex %d opened cluster %d", v, len(table) - 1)

    return Clustering.from_blocks([table.members(c) for c in range(len(table))], n)


class CrowdClusterAlgorithm(ParameterizedAlgorithm):
    """Las Vegas clustering with side information of unknown distribution."""

    @property
    def name(self) -> str:
        return "alg1"

    @property
    def oracle_mode(self) -> str:
        return "perfect"

    @property
    def requires_side_info(self) -> bool:
        return True

    @property
    def las_vegas(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "lasvegas"

    @property
    def parameters(self) -> Dict[str, Dict]:
        return {
            "scorer": {
                "label": "Membership scorer (average or neg_tv)",
                "default": "neg_tv",
                "required": False,
            }
        }

    def _cluster_with_params(self, session, side_info, scorer: str = "neg_tv", **kwargs) -> Clustering:
        if scorer not in ("average", "neg_tv"):
            raise ValueError(f"alg1 supports the average and neg_tv scorers, got '{scorer}'")
        return alg1_lasvegas(session, side_info, MembershipScorer(scorer))
