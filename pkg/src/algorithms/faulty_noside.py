"""Clustering with a faulty oracle and no side information."""

import logging
from typing import Dict, Optional

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from .config import FaultyConfig
from .faulty_state import FaultyState

logger = logging.getLogger(__name__)

FAULTY_PARAMETERS: Dict[str, Dict] = {
    "lam": {"label": "Channel margin 1/2 - p", "default": None, "required": True},
    "desk_scale": {"label": "Multiplier on c = 6 / lam^2", "default": 1.0, "required": False},
    "exact_subgraph_limit": {"label": "Largest graph for the exact subgraph solver", "default": 14, "required": False},
    "exact_partition_limit": {"label": "Largest graph for the exact ML partition", "default": 10, "required": False},
    "restarts": {"label": "Heuristic solver restarts", "default": 4, "required": False},
    "local_search_budget": {"label": "Heuristic moves per restart", "default": 200, "required": False},
}


def alg2(session, cfg: FaultyConfig) -> Clustering:
    """
    Majority votes against accepted clusters, residual graph otherwise.

    Each vertex, in ascending order, is voted against every accepted
    cluster in turn and joins the first one with a majority. A vertex no
    cluster accepts is queried against the whole residual graph, from which
    subgraphs of at least ceil(c ln n) vertices are promoted to clusters.
    The residual left at the end is partitioned by maximum likelihood.
    """
    state = FaultyState(session, cfg, cfg.panel(session.n))
    logger.debug("alg2: panel %d for n=%d", state.panel, session.n)
    _place_all(state, session)
    blocks, _, flags = state.finish(resolve_residual=True)
    return Clustering.from_blocks(blocks, session.n, solver_flags=flags)


def alg2_poly(session, cfg: FaultyConfig, k_hint: Optional[int] = None) -> Clustering:
    """
    Polynomial-time variant: clusters are accepted only at size
    max(ceil(c ln n), k_hint), extraction always uses the heuristic solver
    and the residual is reported unresolved as singletons.
    """
    threshold = max(cfg.panel(session.n), int(k_hint or 0))
    state = FaultyState(session, cfg, threshold, force_heuristic=True)
    logger.debug("alg2-poly: acceptance size %d for n=%d", state.accept_size, session.n)
    _place_all(state, session)
    blocks, unresolved, flags = state.finish(resolve_residual=False)
    return Clustering.from_blocks(blocks, session.n, unresolved=unresolved, solver_flags=flags)


def _place_all(state: FaultyState, session) -> None:
    for v in range(session.n):
        with session.phase("panel"):
            for cid in range(len(state.clusters)):
                if state.vote(v, cid):
                    state.join(v, cid)
                    break
            else:
                cid = -1
        if cid < 0:
            state.add_to_residual(v)


class FaultyNoSideAlgorithm(ParameterizedAlgorithm):
    """Faulty-oracle clustering without side information."""

    @property
    def name(self) -> str:
        return "alg2"

    @property
    def oracle_mode(self) -> str:
        return "faulty"

    @property
    def bound_kind(self) -> str:
        return "faulty"

    @property
    def parameters(self) -> Dict[str, Dict]:
        return dict(FAULTY_PARAMETERS)

    def _cluster_with_params(self, session, side_info, lam: float = None, **kwargs) -> Clustering:
        return alg2(session, FaultyConfig.from_params(lam, **kwargs))


class FaultyNoSidePolyAlgorithm(FaultyNoSideAlgorithm):
    """Polynomial-time faulty-oracle clustering that recovers the large clusters."""

    @property
    def name(self) -> str:
        return "alg2-poly"

    @property
    def parameters(self) -> Dict[str, Dict]:
        params = dict(FAULTY_PARAMETERS)
        params["k_hint"] = {"label": "Caller estimate of the number of clusters", "default": None, "required": False}
        return params

    def _cluster_with_params(self, session, side_info, lam: float = None, k_hint: int = None, **kwargs) -> Clustering:
        return alg2_poly(session, FaultyConfig.from_params(lam, **kwargs), k_hint)
