"""Batched-round clustering with a faulty oracle and no side information."""

import logging
import math
from typing import Dict, List

from ..core.clustering import Clustering
from ..core.parameterized_algorithm import ParameterizedAlgorithm
from ..synth.rng import SAMPLING_STREAM, stream_generator
from .config import FaultyConfig, RoundConfig, default_sample_size
from .faulty_noside import FAULTY_PARAMETERS
from .faulty_state import FaultyState, majority
from .rounds_perfect import all_pairs, submit, submit_groups

logger = logging.getLogger(__name__)


def growth_batch_size(cap: int, residual_size: int) -> int:
    """Largest r with r (r - 1) / 2 + r * residual_size <= cap, at least 1."""
    b = residual_size - 0.5
    r = int(math.floor(-b + math.sqrt(b * b + 2 * cap)))
    while r > 0 and r * (r - 1) // 2 + r * residual_size > cap:
        r -= 1
    while (r + 1) * r // 2 + (r + 1) * residual_size <= cap:
        r += 1
    return max(1, r)


def rounds_faulty_noside(session, cfg: RoundConfig) -> Clustering:
    """
    Sample, extract, grow and extend in batched rounds.

    1. All pairs of a sample of unclustered vertices form the residual
       graph G''.
    2. Subgraphs of at least ceil(c ln n) vertices are extracted from G''
       as clusters; every vertex outside G'' is voted against each new
       cluster in one batched step and joins the first with a majority.
    3. The largest r vertices that fit the cap are queried against each
       other and against G'' and added to it; then back to extraction.

    The residual left when every vertex is in a cluster or in G'' is
    partitioned by maximum likelihood.
    """
    if cfg.faulty is None:
        raise ValueError("rounds_faulty_noside needs faulty-oracle constants")
    n = session.n
    state = FaultyState(session, cfg.faulty, cfg.faulty.panel(n))
    rng = stream_generator(cfg.seed, SAMPLING_STREAM)
    pool: List[int] = list(range(n))

    def extend(chosen: List[int]) -> None:
        residual = list(state.residual.vertices)
        groups = [
            [(v, u) for u in residual] + [(v, u) for u in chosen[:i]]
            for i, v in enumerate(chosen)
        ]
        answers = submit_groups(session, groups, cfg.cap)
        for i, v in enumerate(chosen):
            partners = residual + chosen[:i]
            state.insert_queried(v, dict(zip(partners, answers[i])))

    size = min(cfg.sample_size, len(pool))
    sample = sorted(rng.choice(pool, size=size, replace=False).tolist())
    with session.phase("sample"):
        pairs = all_pairs(sample)
        answers = submit(session, pairs, cfg.cap)
    for v in sample:
        state.residual.add_vertex(v)
    for (u, v), answer in zip(pairs, answers):
        state.residual.set_weight(u, v, answer)
    taken = set(sample)
    pool = [v for v in pool if v not in taken]

    while True:
        created = state.extract()
        if created and pool:
            groups, plan = [], []
            for v in pool:
                group = []
                for cid in created:
                    state.voted.add((v, cid))
                    group.extend((v, u) for u in state.panel_members(cid))
                groups.append(group)
                plan.append(v)
            with session.phase("panel"):
                answers = submit_groups(session, groups, cfg.cap)
            placed = set()
            for v, group_answers in zip(plan, answers):
                offset = 0
                for cid in created:
                    width = len(state.panel_members(cid))
                    if majority(group_answers[offset:offset + width]):
                        state.join(v, cid)
                        placed.add(v)
                        break
                    offset += width
            pool = [v for v in pool if v not in placed]
            logger.debug("Growth step placed %d vertices into %d new clusters", len(placed), len(created))
        if not pool:
            break
        r = min(growth_batch_size(cfg.cap, len(state.residual)), len(pool))
        chosen = sorted(rng.choice(pool, size=r, replace=False).tolist())
        with session.phase("extend"):
            extend(chosen)
        taken = set(chosen)
        pool = [v for v in pool if v not in taken]

    blocks, _, flags = state.finish(resolve_residual=True)
    return Clustering.from_blocks(blocks, n, solver_flags=flags)


class FaultyNoSideRounds(ParameterizedAlgorithm):
    """Faulty-oracle clustering in batched rounds."""

    @property
    def name(self) -> str:
        return "rounds-faulty"

    @property
    def oracle_mode(self) -> str:
        return "faulty"

    @property
    def batched(self) -> bool:
        return True

    @property
    def bound_kind(self) -> str:
        return "faulty"

    @property
    def parameters(self) -> Dict[str, Dict]:
        params = dict(FAULTY_PARAMETERS)
        params["sample_size"] = {"label": "Vertices in the initial all-pairs sample", "default": None, "required": False}
        params["seed"] = {"label": "Sampling seed", "default": 0, "required": False}
        return params

    def _cluster_with_params(self, session, side_info, lam: float = None, sample_size: int = None,
                             seed: int = 0, **kwargs) -> Clustering:
        cfg = RoundConfig(
            cap=session.round_cap,
            sample_size=sample_size or default_sample_size(session.n),
            seed=seed,
            faulty=FaultyConfig.from_params(lam, **kwargs),
        )
        return rounds_faulty_noside(session, cfg)
