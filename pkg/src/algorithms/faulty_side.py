"""Clustering with a faulty oracle and side information."""

import logging
from typing import Dict

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from ..stats.bounds import oracle_delta
from ..stats.pmf import Pmf
from .config import FaultyConfig
from .crowd_cluster import place_by_rank, rank_clusters, select_vertex
from .faulty_noside import FAULTY_PARAMETERS
from .faulty_state import FaultyState
from .membership import MembershipScorer, MembershipTable

logger = logging.getLogger(__name__)


def warn_if_side_info_stronger(delta: float, p: float) -> bool:
    """
    Log a warning when Delta(f+, f-) >= Delta(p, 1-p).

    Returns:
        bool: Whether the warning was issued
    """
    if delta is None:
        return False
    channel = oracle_delta(p)
    if delta >= channel:
        logger.warning(
            "Side information (Delta=%.4g) is at least as informative as the oracle (Delta=%.4g)",
            delta, channel,
        )
        return True
    return False


def alg3(session, side_info, cfg: FaultyConfig, scorer: MembershipScorer) -> Clustering:
    """
    Membership-ranked placement with majority votes.

    Vertices are chosen and verified in the ranked, dyadic and exhaustive
    stages of the perfect-oracle algorithm, over the accepted clusters
    only, with every check a majority vote. A vertex is never voted twice
    against the same cluster. Vertices no cluster accepts go to the
    residual graph, handled as in the algorithm without side information.
    """
    table = MembershipTable(side_info, scorer)
    state = FaultyState(session, cfg, cfg.panel(session.n), table=table)
    pending = list(range(session.n))

    while pending:
        if not state.clusters:
            state.add_to_residual(pending.pop(0))
            continue
        sizes = table.sizes().tolist()
        ranked = rank_clusters(sizes)
        scores = table.scores(pending, ranked)
        row, j = select_vertex(scores)
        v = pending.pop(row)
        target = place_by_rank(v, scores[row], ranked, sizes, j, state.vote, state.voted, session)
        if target >= 0:
            state.join(v, target)
        else:
            state.add_to_residual(v)

    blocks, _, flags = state.finish(resolve_residual=True)
    return Clustering.from_blocks(blocks, session.n, solver_flags=flags)


class FaultySideAlgorithm(ParameterizedAlgorithm):
    """Faulty-oracle clustering guided by side information."""

    @property
    def name(self) -> str:
        return "alg3"

    @property
    def oracle_mode(self) -> str:
        return "faulty"

    @property
    def requires_side_info(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "faulty"

    @property
    def parameters(self) -> Dict[str, Dict]:
        params = dict(FAULTY_PARAMETERS)
        params["scorer"] = {"label": "Membership scorer (average, neg_tv or div_test)", "default": "average", "required": False}
        return params

    def _cluster_with_params(self, session, side_info, lam: float = None, scorer: str = "average",
                             f_plus: Pmf = None, f_minus: Pmf = None, delta: float = None,
                             **kwargs) -> Clustering:
        cfg = FaultyConfig.from_params(lam, **kwargs)
        warn_if_side_info_stronger(delta, 0.5 - cfg.lam)
        if scorer == "div_test":
            membership_scorer = MembershipScorer(scorer, f_plus, f_minus)
        else:
            membership_scorer = MembershipScorer(scorer)
        return alg3(session, side_info, cfg, membership_scorer)
