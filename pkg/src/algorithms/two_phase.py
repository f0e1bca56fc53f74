"""Two-phase clustering with a perfect oracle and side information of known law.

Querying phase: an unassigned vertex is queried against one member of
every active cluster (fewer than M members). Estimation phase: when a
cluster reaches M members it leaves the active list and every unassigned
vertex is tested against its M-member core using side information alone.

The Las Vegas variant confirms each estimation-phase inclusion with one
query and falls back to querying every other cluster on a -1 answer.
"""

import logging
from typing import Callable, Dict, List, Optional, Set, Tuple

import numpy as np

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from ..stats.pmf import GapParams, Pmf
from ..stats.thresholds import threshold_M_div, threshold_M_mean
from .membership import MembershipScorer, MembershipTable

logger = logging.getLogger(__name__)


class TwoPhaseRun:
    """
    State of one two-phase run.

    Args:
        session: Perfect-oracle session
        side_info: Side-information matrix
        threshold: Cluster size M at which a cluster leaves the active list
        scorer: Scorer applied to the M-member core
        accept: Decision on a core score
        las_vegas: Confirm estimation-phase decisions with queries
    """

    def __init__(
        self,
        session,
        side_info,
        threshold: int,
        scorer: MembershipScorer,
        accept: Callable[[float], bool],
        las_vegas: bool,
    ):
        if threshold < 1:
            raise ValueError(f"Cluster size threshold must be at least 1, got {threshold}")
        self.session = session
        self.table = MembershipTable(side_info, scorer)
        self.threshold = threshold
        self.accept = accept
        self.las_vegas = las_vegas
        self.clusters: List[List[int]] = []
        self.active: List[int] = []
        self.final: List[int] = []
        self.assigned = np.zeros(session.n, dtype=bool)
        self.asked: Set[Tuple[int, int]] = set()
        self._pending: List[int] = []

    def _ask(self, v: int, cid: int) -> bool:
        self.asked.add((v, cid))
        return self.session.query(v, self.clusters[cid][0]) == 1

    def _join(self, v: int, cid: int) -> None:
        self.clusters[cid].append(v)
        self.assigned[v] = True
        if cid in self.active and len(self.clusters[cid]) >= self.threshold:
            self.active.remove(cid)
            self._pending.append(cid)

    def _open(self, v: int) -> int:
        self.clusters.append([])
        cid = len(self.clusters) - 1
        self.active.append(cid)
        self._join(v, cid)
        logger.debug("Vertex %d opened cluster %d", v, cid)
        return cid

    def _query_all(self, v: int, cids: List[int]) -> int:
        for cid in cids:
            if (v, cid) not in self.asked and self._ask(v, cid):
                return cid
        return -1

    def _estimate(self, cid: int) -> None:
        core = list(self.clusters[cid][: self.threshold])
        self.final.append(cid)
        candidates = np.flatnonzero(~self.assigned)
        if candidates.size == 0:
            return
        scores = self.table.core_scores(candidates, core)
        logger.debug("Estimation phase on cluster %d with %d candidates", cid, candidates.size)
        with self.session.phase("estimation"):
            for u, score in zip(candidates.tolist(), scores.tolist()):
                if not self.accept(score):
                    continue
                if not self.las_vegas:
                    self._join(u, cid)
                    continue
                if self._ask(u, cid):
                    self._join(u, cid)
                    continue
                others = [c for c in self.active + self.final if c != cid]
                target = self._query_all(u, others)
                if target >= 0:
                    self._join(u, target)
                else:
                    self._open(u)

    def _drain(self) -> None:
        while self._pending:
            self._estimate(self._pending.pop(0))

    def run(self) -> Clustering:
        for v in range(self.session.n):
            if self.assigned[v]:
                continue
            with self.session.phase("querying"):
                target = self._query_all(v, list(self.active))
                if target < 0 and self.las_vegas:
                    target = self._query_all(v, list(self.final))
            if target >= 0:
                self._join(v, target)
            else:
                self._open(v)
            self._drain()
        return Clustering.from_blocks(self.clusters, self.session.n)


def alg1a_montecarlo(session, side_info, mu_plus: float, mu_minus: float, desk_scale: float = 1.0) -> Clustering:
    """Mean rule: include v when Average(v, core) >= mu_plus - theta_gap / 2."""
    gap = GapParams(mu_plus, mu_minus)
    gap.require_positive_gap()
    threshold = threshold_M_mean(session.n, gap.theta_gap, desk_scale)
    cut = mu_plus - gap.theta_gap / 2
    return TwoPhaseRun(session, side_info, threshold, MembershipScorer("average"), lambda s: s >= cut, False).run()


def alg1a_lasvegas(session, side_info, mu_plus: float, mu_minus: float, desk_scale: float = 1.0) -> Clustering:
    """Mean rule with every estimation-phase decision confirmed by queries."""
    gap = GapParams(mu_plus, mu_minus)
    gap.require_positive_gap()
    threshold = threshold_M_mean(session.n, gap.theta_gap, desk_scale)
    cut = mu_plus - gap.theta_gap / 2
    return TwoPhaseRun(session, side_info, threshold, MembershipScorer("average"), lambda s: s >= cut, True).run()


def alg_div_montecarlo(
    session, side_info, f_plus: Pmf, f_minus: Pmf, desk_scale: float = 1.0, las_vegas: bool = False
) -> Clustering:
    """Divergence rule: include v when D(p_vC || f+) < D(p_vC || f-)."""
    threshold = threshold_M_div(session.n, f_plus, f_minus, desk_scale)
    scorer = MembershipScorer("div_test", f_plus, f_minus)
    return TwoPhaseRun(session, side_info, threshold, scorer, lambda s: s > 0, las_vegas).run()


class _TwoPhaseAlgorithm(ParameterizedAlgorithm):
    @property
    def oracle_mode(self) -> str:
        return "perfect"

    @property
    def requires_side_info(self) -> bool:
        return True


class MeanRuleMonteCarlo(_TwoPhaseAlgorithm):
    """Two-phase clustering with the mean rule; may err with probability <= 2/n."""

    @property
    def name(self) -> str:
        return "alg1a-mc"

    @property
    def bound_kind(self) -> str:
        return "perfect_side"

    @property
    def parameters(self) -> Dict[str, Dict]:
        return {
            "mu_plus": {"label": "Mean of f+", "default": None, "required": True},
            "mu_minus": {"label": "Mean of f-", "default": None, "required": True},
            "desk_scale": {"label": "Multiplier on M", "default": 1.0, "required": False},
        }

    def query_budget(self, n: int, k: int, mu_plus: float = None, mu_minus: float = None,
                     desk_scale: float = 1.0, **kwargs) -> Optional[float]:
        if mu_plus is None or mu_minus is None:
            return None
        return float(k * k * threshold_M_mean(n, mu_plus - mu_minus, desk_scale or 1.0))

    def _cluster_with_params(self, session, side_info, mu_plus: float = None, mu_minus: float = None,
                             desk_scale: float = 1.0, **kwargs) -> Clustering:
        return alg1a_montecarlo(session, side_info, mu_plus, mu_minus, desk_scale)


class MeanRuleLasVegas(MeanRuleMonteCarlo):
    """Two-phase clustering with the mean rule and confirmed decisions; always exact."""

    @property
    def name(self) -> str:
        return "alg1a-lv"

    @property
    def las_vegas(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "lasvegas"

    def query_budget(self, n: int, k: int, **kwargs) -> Optional[float]:
        return None

    def _cluster_with_params(self, session, side_info, mu_plus: float = None, mu_minus: float = None,
                             desk_scale: float = 1.0, **kwargs) -> Clustering:
        return alg1a_lasvegas(session, side_info, mu_plus, mu_minus, desk_scale)


class DivergenceRuleAlgorithm(_TwoPhaseAlgorithm):
    """Two-phase clustering with the divergence rule, Monte Carlo by default."""

    @property
    def name(self) -> str:
        return "alg-div"

    @property
    def bound_kind(self) -> str:
        return "perfect_side"

    @property
    def parameters(self) -> Dict[str, Dict]:
        return {
            "f_plus": {"label": "Intra-cluster pmf", "default": None, "required": True},
            "f_minus": {"label": "Inter-cluster pmf", "default": None, "required": True},
            "desk_scale": {"label": "Multiplier on M", "default": 1.0, "required": False},
            "las_vegas": {"label": "Confirm decisions with queries", "default": False, "required": False},
        }

    def guarantees_exact(self, las_vegas: bool = False, **kwargs) -> bool:
        return bool(las_vegas)

    def query_budget(self, n: int, k: int, f_plus: Pmf = None, f_minus: Pmf = None,
                     desk_scale: float = 1.0, las_vegas: bool = False, **kwargs) -> Optional[float]:
        if las_vegas or f_plus is None or f_minus is None:
            return None
        return float(k * k * threshold_M_div(n, f_plus, f_minus, desk_scale or 1.0))

    def _cluster_with_params(self, session, side_info, f_plus: Pmf = None, f_minus: Pmf = None,
                             desk_scale: float = 1.0, las_vegas: bool = False, **kwargs) -> Clustering:
        return alg_div_montecarlo(session, side_info, f_plus, f_minus, desk_scale, bool(las_vegas))
