"""Membership scores of vertices in candidate clusters, computed from side information."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..stats.divergence import kl
from ..stats.pmf import Pmf
from ..synth.sideinfo import SideInfoMatrix

logger = logging.getLogger(__name__)

SCORER_KINDS = ("average", "neg_tv", "div_test")

SINGLETON_SENTINEL = -2.0


@dataclass(frozen=True)
class MembershipScorer:
    """
    Rule that ranks clusters as homes for a vertex; higher is better.

    - ``average``: mean similarity of v to the cluster
    - ``neg_tv``: minus the TV distance between the inter distribution of
      v and the intra distribution of the cluster; ``sentinel`` for
      one-member clusters
    - ``div_test``: D(p_vC || f-) - D(p_vC || f+), positive when the
      divergence rule accepts v
    """

    kind: str = "average"
    f_plus: Optional[Pmf] = None
    f_minus: Optional[Pmf] = None
    sentinel: float = SINGLETON_SENTINEL

    def __post_init__(self):
        if self.kind not in SCORER_KINDS:
            raise ValueError(
                f"Unsupported membership scorer '{self.kind}', expected one of {', '.join(SCORER_KINDS)}"
            )
        if self.kind == "div_test":
            if self.f_plus is None or self.f_minus is None:
                raise ValueError("div_test scorer needs f_plus and f_minus")
            self.f_plus.require_same_support(self.f_minus)
            if self.f_plus.min_mass <= 0 or self.f_minus.min_mass <= 0:
                raise ValueError("div_test scorer needs strictly positive pmfs")

    @property
    def needs_histograms(self) -> bool:
        return self.kind != "average"

    def log_ratio(self) -> np.ndarray:
        """ln(f+(i) / f-(i)) per grid point; the div_test score is its mean under p_vC."""
        return np.log(self.f_plus.mass) - np.log(self.f_minus.mass)


def _check_cluster(v: int, cluster: Sequence[int]) -> np.ndarray:
    members = np.asarray(cluster, dtype=int)
    if members.size == 0:
        raise ValueError("Membership needs a non-empty cluster")
    if v in set(members.tolist()):
        raise ValueError(f"Vertex {v} is already a member of the cluster")
    return members


def avg_membership(v: int, cluster: Sequence[int], side_info: SideInfoMatrix) -> float:
    """Mean of w(v, u) over the members u of the cluster."""
    members = _check_cluster(v, cluster)
    side_info.count_reads(members.size)
    return float(side_info.values[v, members].mean())


def inter_dist(v: int, cluster: Sequence[int], side_info: SideInfoMatrix) -> Pmf:
    """Empirical distribution of w(v, u) over the members u of the cluster."""
    members = _check_cluster(v, cluster)
    side_info.count_reads(members.size)
    counts = np.bincount(side_info.indices[v, members], minlength=side_info.q)
    return Pmf.from_counts(side_info.support, counts)


def intra_dist(cluster: Sequence[int], side_info: SideInfoMatrix) -> Pmf:
    """
    Empirical distribution of w over the pairs inside the cluster.

    Raises:
        ValueError: If the cluster has fewer than two members
    """
    members = np.asarray(cluster, dtype=int)
    if members.size < 2:
        raise ValueError(f"Intra distribution needs at least two members, got {members.size}")
    rows, cols = np.triu_indices(members.size, k=1)
    side_info.count_reads(rows.size)
    counts = np.bincount(side_info.indices[members[rows], members[cols]], minlength=side_info.q)
    return Pmf.from_counts(side_info.support, counts)


def membership(scorer: MembershipScorer, v: int, cluster: Sequence[int], side_info: SideInfoMatrix) -> float:
    """Score of v in the cluster under ``scorer``."""
    if scorer.kind == "average":
        return avg_membership(v, cluster, side_info)
    if scorer.kind == "neg_tv":
        if len(cluster) < 2:
            _check_cluster(v, cluster)
            return scorer.sentinel
        inter = inter_dist(v, cluster, side_info)
        intra = intra_dist(cluster, side_info)
        return -float(0.5 * np.abs(inter.mass - intra.mass).sum())
    p = inter_dist(v, cluster, side_info)
    p.require_same_support(scorer.f_plus)
    return kl(p, scorer.f_minus) - kl(p, scorer.f_plus)


class MembershipTable:
    """
    Incrementally maintained membership scores for a growing set of clusters.

    For every cluster the table keeps, per open vertex, the sum of
    similarities to the members and (for histogram scorers) the count of
    each grid value, plus the histogram of pairs inside the cluster. Adding
    a member reads one row of W; scoring any number of vertices reads
    nothing.

    A vertex is open until it joins a cluster or is retired. Rows of closed
    vertices are dropped from every cluster, so storage shrinks as vertices
    are placed and only open vertices can be scored.
    """

    def __init__(self, side_info: SideInfoMatrix, scorer: MembershipScorer):
        if scorer.kind == "div_test" and not np.array_equal(scorer.f_plus.support, side_info.support):
            raise ValueError("div_test pmfs and side information use different support grids")
        self.side_info = side_info
        self.scorer = scorer
        self._members: List[List[int]] = []
        self._sums: List[np.ndarray] = []
        self._hist: List[Optional[np.ndarray]] = []
        self._intra: List[np.ndarray] = []
        self._open = np.arange(side_info.n)
        self._row = np.arange(side_info.n)
        self._log_ratio = scorer.log_ratio() if scorer.kind == "div_test" else None

    def __len__(self) -> int:
        return len(self._members)

    def members(self, cid: int) -> List[int]:
        return self._members[cid]

    def size(self, cid: int) -> int:
        return len(self._members[cid])

    def sizes(self) -> np.ndarray:
        return np.array([len(m) for m in self._members], dtype=int)

    @property
    def open_vertices(self) -> np.ndarray:
        """Vertices that can still be scored, in increasing order."""
        return self._open

    def add_cluster(self, members: Sequence[int]) -> int:
        """Register a new cluster and return its id."""
        m, q = self._open.size, self.side_info.q
        self._members.append([])
        self._sums.append(np.zeros(m))
        self._hist.append(np.zeros((m, q), dtype=np.int32) if self.scorer.needs_histograms else None)
        self._intra.append(np.zeros(q, dtype=np.int64))
        cid = len(self._members) - 1
        for v in members:
            self.add_member(cid, v)
        return cid

    def add_member(self, cid: int, v: int) -> None:
        """Add v to cluster ``cid`` and close it."""
        members = self._members[cid]
        row_idx = self.side_info.indices[v]
        if members and self.scorer.needs_histograms:
            self._intra[cid] += np.bincount(row_idx[members], minlength=self.side_info.q)
        self._sums[cid] += self.side_info.values[v][self._open]
        if self.scorer.needs_histograms:
            self._hist[cid][np.arange(self._open.size), row_idx[self._open]] += 1
        self.side_info.count_reads(self.side_info.n)
        members.append(int(v))
        self.retire([v])

    def retire(self, vertices: Sequence[int]) -> None:
        """Close vertices that will not be scored again; closed vertices are ignored."""
        closing = [int(v) for v in vertices if self._row[v] >= 0]
        if not closing:
            return
        keep = np.ones(self._open.size, dtype=bool)
        keep[self._row[closing]] = False
        for cid in range(len(self._members)):
            self._sums[cid] = self._sums[cid][keep]
            if self._hist[cid] is not None:
                self._hist[cid] = self._hist[cid][keep]
        self._open = self._open[keep]
        self._row[closing] = -1
        self._row[self._open] = np.arange(self._open.size)

    def scores(self, vertices: Sequence[int], cids: Sequence[int]) -> np.ndarray:
        """
        Scores of ``vertices`` (rows) in the clusters ``cids`` (columns).

        Raises:
            ValueError: If a vertex is already closed
        """
        vertices = np.asarray(vertices, dtype=int)
        rows = self._row[vertices]
        if (rows < 0).any():
            raise ValueError(f"Cannot score closed vertices: {vertices[rows < 0].tolist()}")
        out = np.empty((vertices.size, len(cids)))
        for col, cid in enumerate(cids):
            size = len(self._members[cid])
            if self.scorer.kind == "average":
                out[:, col] = self._sums[cid][rows] / size
            elif self.scorer.kind == "neg_tv":
                if size < 2:
                    out[:, col] = self.scorer.sentinel
                    continue
                inter = self._hist[cid][rows] / size
                intra = self._intra[cid] / (size * (size - 1) / 2)
                out[:, col] = -0.5 * np.abs(inter - intra).sum(axis=1)
            else:
                inter = self._hist[cid][rows] / size
                out[:, col] = inter @ self._log_ratio
        return out

    def core_scores(self, vertices: Sequence[int], core: Sequence[int]) -> np.ndarray:
        """Scores of ``vertices`` against a fixed member set, without registering it."""
        table = MembershipTable(self.side_info, self.scorer)
        table.retire(np.setdiff1d(np.arange(self.side_info.n), np.union1d(vertices, core)))
        cid = table.add_cluster(core)
        return table.scores(vertices, [cid])[:, 0]
