"""Baseline: one query per existing cluster for every vertex."""

import logging

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm

logger = logging.getLogger(__name__)


def baseline_nk(session) -> Clustering:
    """
    Place vertices in ascending order, asking each one against a member of
    every cluster opened so far until an answer is +1.

    Exact under a perfect oracle with at most n k queries.
    """
    clusters = []
    for v in range(session.n):
        for members in clusters:
            if session.query(v, members[0]) == 1:
                members.append(v)
                break
        else:
            clusters.append([v])
    logger.debug("Baseline opened %d clusters with %d queries", len(clusters), session.query_count)
    return Clustering.from_blocks(clusters, session.n)


class BaselineAlgorithm(ParameterizedAlgorithm):
    """Greedy n k baseline without side information."""

    @property
    def name(self) -> str:
        return "baseline"

    @property
    def oracle_mode(self) -> str:
        return "perfect"

    @property
    def las_vegas(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "faulty"

    def query_budget(self, n: int, k: int, **kwargs) -> float:
        return float(n * k)

    def _cluster_with_params(self, session, side_info, **kwargs) -> Clustering:
        return baseline_nk(session)
