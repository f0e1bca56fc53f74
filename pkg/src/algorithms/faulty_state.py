"""Shared state of the faulty-oracle algorithms: accepted clusters and the residual graph."""

import logging
from typing import List, Optional, Set, Tuple

import numpy as np

from ..core.errors import InvariantViolation
from ..core.signed_graph import SignedGraph
from .config import FaultyConfig
from .membership import MembershipTable
from .ml import ml_estimate_blocks
from .subgraph import max_weight_subgraph

logger = logging.getLogger(__name__)


class FaultyState:
    """
    Accepted clusters A and the residual graph G' of a faulty-oracle run.

    Every cluster in A has at least ``accept_size`` members when accepted.
    Every pair of residual vertices has been queried. A vertex is voted
    against a cluster at most once; a vote asks the first ``panel``
    members and succeeds on a strict majority of +1 answers.

    Args:
        session: Faulty-oracle session
        cfg: Faulty-oracle constants
        accept_size: Smallest extracted subgraph accepted into A
        force_heuristic: Always use the heuristic subgraph solver
        table: Membership table kept in step with A, if side information is used
    """

    def __init__(
        self,
        session,
        cfg: FaultyConfig,
        accept_size: int,
        force_heuristic: bool = False,
        table: Optional[MembershipTable] = None,
    ):
        self.session = session
        self.cfg = cfg
        self.panel = cfg.panel(session.n)
        self.accept_size = max(accept_size, self.panel)
        self.force_heuristic = force_heuristic
        self.table = table
        self.clusters: List[List[int]] = []
        self.residual = SignedGraph()
        self.voted: Set[Tuple[int, int]] = set()
        self.methods: List[str] = []

    def panel_members(self, cid: int) -> List[int]:
        return self.clusters[cid][: self.panel]

    def vote(self, v: int, cid: int) -> bool:
        """
        Majority vote of v against cluster ``cid``.

        Raises:
            InvariantViolation: If v was already voted against the cluster
        """
        if (v, cid) in self.voted:
            raise InvariantViolation(f"Vertex {v} voted twice against cluster {cid}")
        self.voted.add((v, cid))
        return majority([self.session.query(v, u) for u in self.panel_members(cid)])

    def join(self, v: int, cid: int) -> None:
        self.clusters[cid].append(v)
        if self.table is not None:
            self.table.add_member(cid, v)

    def open_cluster(self, members) -> int:
        self.clusters.append(list(members))
        cid = len(self.clusters) - 1
        if self.table is not None:
            table_id = self.table.add_cluster(members)
            if table_id != cid:
                raise InvariantViolation("Membership table out of step with accepted clusters")
        return cid

    def add_to_residual(self, v: int) -> None:
        """Query v against every residual vertex, insert it and extract large subgraphs."""
        others = self.residual.vertices
        self.residual.add_vertex(v)
        if self.table is not None:
            self.table.retire([v])
        with self.session.phase("residual"):
            for u in others:
                self.residual.set_weight(v, u, self.session.query(v, u))
        self.extract()

    def insert_queried(self, v: int, answers) -> None:
        """Insert v with answers already obtained for ``(v, u)`` pairs, given as ``{u: answer}``."""
        self.residual.add_vertex(v)
        for u, answer in answers.items():
            self.residual.set_weight(v, u, answer)

    def extract(self) -> List[int]:
        """
        Move heavy subgraphs of at least ``accept_size`` vertices from G' into A.

        After each move, every residual vertex whose recorded answers to
        the new cluster sum to a positive value joins it, highest sum first.

        Returns:
            List[int]: Ids of the clusters created
        """
        created = []
        while len(self.residual) >= self.accept_size:
            result = max_weight_subgraph(self.residual, self.cfg, self.force_heuristic)
            self.methods.append(result.method)
            if len(result) < self.accept_size:
                break
            nodes, matrix = self.residual.weight_matrix()
            index = {v: i for i, v in enumerate(nodes)}
            inside = [index[v] for v in result.members]
            scores = matrix[:, inside].sum(axis=1)
            member_set = set(result.members)
            outside = [i for i in range(len(nodes)) if nodes[i] not in member_set]
            order = sorted((i for i in outside if scores[i] > 0), key=lambda i: (-scores[i], nodes[i]))

            cid = self.open_cluster(result.members)
            self.residual.remove_vertices(result.members)
            for i in order:
                self.join(nodes[i], cid)
            self.residual.remove_vertices(nodes[i] for i in order)
            created.append(cid)
            logger.debug(
                "Accepted cluster %d: %d extracted (%s), %d absorbed",
                cid, len(result), result.method, len(order),
            )
        return created

    def finish(self, resolve_residual: bool = True) -> Tuple[List[List[int]], List[int], List[str]]:
        """
        Final blocks of the run.

        Args:
            resolve_residual: Partition G' by maximum likelihood; otherwise
                its vertices become singletons and are reported unresolved

        Returns:
            Tuple of the blocks, the unresolved vertices and the solver flags
        """
        blocks = [list(c) for c in self.clusters]
        unresolved: List[int] = []
        flags = sorted({f"subgraph:{m}" for m in self.methods})
        if resolve_residual:
            residual_blocks, method = ml_estimate_blocks(self.residual, self.cfg)
            blocks.extend(residual_blocks)
            if len(self.residual):
                flags.append(f"ml:{method}")
                if method == "heuristic":
                    logger.warning(
                        "Residual of %d vertices partitioned by peeling instead of exact ML",
                        len(self.residual),
                    )
        else:
            unresolved = list(self.residual.vertices)
            blocks.extend([v] for v in unresolved)
        return blocks, unresolved, flags


def majority(answers) -> bool:
    """Strict majority of +1 among +1/-1 answers."""
    return int(np.sum(answers)) > 0
