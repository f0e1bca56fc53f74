"""Batched-round clustering with a perfect oracle.

Queries are issued in rounds of at most ``cap`` pairs. Every batch is
fully built before it is submitted, so no pair in a round depends on an
answer from the same round.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from ..synth.rng import SAMPLING_STREAM, stream_generator
from .config import RoundConfig, default_sample_size
from .crowd_cluster import dyadic_candidates, rank_clusters
from .membership import MembershipScorer, MembershipTable

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def submit_groups(session, groups: Sequence[Sequence[Pair]], cap: int) -> List[List[int]]:
    """
    Ask groups of pairs in as few rounds of at most ``cap`` pairs as the
    packing allows, never splitting a group that fits in one round.

    Returns:
        List[List[int]]: Answers per group
    """
    answers: List[List[int]] = [[] for _ in groups]
    batch: List[Pair] = []
    owners: List[int] = []

    def flush():
        if batch:
            for owner, answer in zip(owners, session.batch_query(batch)):
                answers[owner].append(answer)
            batch.clear()
            owners.clear()

    for gid, group in enumerate(groups):
        if len(batch) + len(group) > cap:
            flush()
        for pair in group:
            if len(batch) == cap:
                flush()
            batch.append(pair)
            owners.append(gid)
    flush()
    return answers


def submit(session, pairs: Sequence[Pair], cap: int) -> List[int]:
    """Ask pairs in consecutive rounds of at most ``cap``."""
    return submit_groups(session, [pairs], cap)[0]


def all_pairs(vertices: Sequence[int]) -> List[Pair]:
    return [(vertices[i], vertices[j]) for i in range(len(vertices)) for j in range(i + 1, len(vertices))]


def positive_components(vertices: Sequence[int], pairs: Sequence[Pair], answers: Sequence[int]) -> List[List[int]]:
    """Connected components of the +1 answers, each sorted, ordered by smallest vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(pair for pair, answer in zip(pairs, answers) if answer == 1)
    return sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])


def rounds_perfect_noside(session) -> Clustering:
    """
    One cluster per round: the smallest unassigned vertex is asked against
    every other unassigned vertex at once.

    A round whose vertex is the last one left is recorded with no queries,
    so the number of rounds equals the number of clusters.

    Raises:
        ValueError: If the round cap is below n - 1
    """
    n = session.n
    if session.round_cap is None or session.round_cap < n - 1:
        raise ValueError(f"Round cap {session.round_cap} is below n - 1 = {n - 1}")
    unassigned = list(range(n))
    blocks = []
    with session.phase("round"):
        while unassigned:
            v, others = unassigned[0], unassigned[1:]
            answers = session.batch_query([(v, u) for u in others], force_round=True)
            blocks.append([v] + [u for u, a in zip(others, answers) if a == 1])
            unassigned = [u for u, a in zip(others, answers) if a != 1]
    return Clustering.from_blocks(blocks, n)


class _SideRoundsRun:
    def __init__(self, session, side_info, cfg: RoundConfig):
        self.session = session
        self.cfg = cfg
        self.table = MembershipTable(side_info, MembershipScorer(cfg.scorer))
        self.assigned = np.full(session.n, -1)
        self.checked = set()
        self.rng = stream_generator(cfg.seed, SAMPLING_STREAM)

    def unassigned(self) -> np.ndarray:
        return np.flatnonzero(self.assigned < 0)

    def _add(self, v: int, cid: int) -> None:
        self.table.add_member(cid, v)
        self.assigned[v] = cid

    def sample_and_merge(self) -> None:
        """Query all pairs of a fresh sample, then merge its clusters into the known ones."""
        pool = self.unassigned()
        size = min(self.cfg.sample_size, pool.size)
        sample = sorted(self.rng.choice(pool, size=size, replace=False).tolist())
        pairs = all_pairs(sample)
        with self.session.phase("sample"):
            answers = submit(self.session, pairs, self.cfg.cap)
        new_blocks = positive_components(sample, pairs, answers)

        old = list(range(len(self.table)))
        groups = [[(block[0], self.table.members(c)[0]) for c in old] for block in new_blocks]
        with self.session.phase("merge"):
            merge_answers = submit_groups(self.session, groups, self.cfg.cap)
        for block, block_answers in zip(new_blocks, merge_answers):
            target = next((c for c, a in zip(old, block_answers) if a == 1), -1)
            if target < 0:
                target = self.table.add_cluster([])
            for v in block:
                self._add(v, target)
        logger.debug("Sample of %d formed %d blocks against %d clusters", size, len(new_blocks), len(old))

    def candidate_step(self) -> None:
        """Ask every unassigned vertex against its best cluster and the best of each larger size class."""
        pending = self.unassigned()
        if pending.size == 0 or len(self.table) == 0:
            return
        sizes = self.table.sizes().tolist()
        ranked = rank_clusters(sizes)
        scores = self.table.scores(pending, ranked)
        best = scores.argmax(axis=1)
        groups, targets = [], []
        for row, v in enumerate(pending.tolist()):
            j = int(best[row])
            cands = [ranked[j]] + dyadic_candidates(scores[row], ranked, sizes, j)
            cands = [c for c in cands if (v, c) not in self.checked]
            self.checked.update((v, c) for c in cands)
            groups.append([(v, self.table.members(c)[0]) for c in cands])
            targets.append((v, cands))
        with self.session.phase("candidates"):
            answers = submit_groups(self.session, groups, self.cfg.cap)
        for (v, cands), group_answers in zip(targets, answers):
            hit = next((c for c, a in zip(cands, group_answers) if a == 1), -1)
            if hit >= 0:
                self._add(v, hit)

    def run(self) -> Clustering:
        while self.unassigned().size:
            self.sample_and_merge()
            self.candidate_step()
            if self.unassigned().size:
                self.sample_and_merge()
        blocks = [self.table.members(c) for c in range(len(self.table)) if self.table.size(c)]
        return Clustering.from_blocks(blocks, self.session.n)


def rounds_perfect_side(session, side_info, cfg: RoundConfig) -> Clustering:
    """
    Sample, candidate and merge steps repeated until every vertex is placed.

    Every inclusion is certified by a +1 answer and every new cluster has
    been compared with all known clusters, so the result is exact.
    """
    if cfg.sample_size * (cfg.sample_size - 1) / 2 > cfg.cap:
        logger.warning(
            "Sample of %d vertices needs %d pairs, more than the cap %d; sampling spans several rounds",
            cfg.sample_size, cfg.sample_size * (cfg.sample_size - 1) // 2, cfg.cap,
        )
    return _SideRoundsRun(session, side_info, cfg).run()


class _RoundsAlgorithm(ParameterizedAlgorithm):
    @property
    def batched(self) -> bool:
        return True

    @property
    def oracle_mode(self) -> str:
        return "perfect"


class PerfectNoSideRounds(_RoundsAlgorithm):
    """k rounds, one cluster completed per round."""

    @property
    def name(self) -> str:
        return "rounds-noside"

    @property
    def las_vegas(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "faulty"

    def _cluster_with_params(self, session, side_info, **kwargs) -> Clustering:
        return rounds_perfect_noside(session)


class PerfectSideRounds(_RoundsAlgorithm):
    """Sampling and side-information candidates in few rounds."""

    @property
    def name(self) -> str:
        return "rounds-side"

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
            "sample_size": {"label": "Vertices per all-pairs sample", "default": None, "required": False},
            "scorer": {"label": "Membership scorer (average or neg_tv)", "default": "average", "required": False},
            "seed": {"label": "Sampling seed", "default": 0, "required": False},
        }

    def _cluster_with_params(self, session, side_info, sample_size: int = None, scorer: str = "average",
                             seed: int = 0, **kwargs) -> Clustering:
        cfg = RoundConfig(
            cap=session.round_cap,
            sample_size=sample_size or default_sample_size(session.n),
            seed=seed,
            scorer=scorer,
        )
        return rounds_perfect_side(session, side_info, cfg)
