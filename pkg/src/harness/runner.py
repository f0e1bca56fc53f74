"""Run an experiment: one seeded instance, oracle and algorithm run per seed."""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional

from ..core.clustering import compare_clusterings
from ..core.errors import ConfigError, InvariantViolation
from ..core.instance import Instance
from ..core.registry import AlgorithmRegistry, get_global_registry
from ..core.report import RunReport
from ..oracle.session import OracleSession, default_round_cap
from ..stats.bounds import lower_bound_faulty, lower_bound_lasvegas, lower_bound_perfect_side
from ..synth.generator import gen_instance, gen_sideinfo
from ..synth.presets import SideInfoModel
from ..synth.sideinfo import SideInfoMatrix
from .config import ExperimentConfig

logger = logging.getLogger(__name__)


def default_registry() -> AlgorithmRegistry:
    """The global registry with every built-in algorithm registered."""
    from ..algorithms import register_builtin_algorithms

    registry = get_global_registry()
    register_builtin_algorithms(registry)
    return registry


def reference_bound(kind: Optional[str], n: int, k: int, p: float, model: Optional[SideInfoModel]) -> Optional[float]:
    """Lower-bound reference value for a bound kind, or None if it does not apply."""
    if kind == "faulty":
        return lower_bound_faulty(n, k, p)
    if model is None:
        return None
    if kind == "perfect_side":
        return lower_bound_perfect_side(k, model.delta)
    if kind == "lasvegas":
        return lower_bound_lasvegas(n, k, model.delta)
    return None


def bound_ratio(query_count: int, bound: Optional[float]) -> float:
    """query_count / bound; 0 for an infinite bound, nan when none applies."""
    if bound is None or bound <= 0:
        return math.nan
    if math.isinf(bound):
        return 0.0
    return query_count / bound


def algorithm_kwargs(cfg: ExperimentConfig, seed: int) -> Dict[str, Any]:
    """Model knowledge offered to the algorithm, overridden by the config's params."""
    kwargs: Dict[str, Any] = {}
    if cfg.side_info is not None:
        kwargs.update(cfg.side_info.knowledge())
    if cfg.oracle.mode == "faulty":
        kwargs["lam"] = cfg.oracle.lam
    kwargs["seed"] = seed
    kwargs.update(cfg.params)
    return kwargs


def run_single(
    cfg: ExperimentConfig,
    seed: int,
    registry: Optional[AlgorithmRegistry] = None,
    instance: Optional[Instance] = None,
    side_info: Optional[SideInfoMatrix] = None,
) -> RunReport:
    """
    Generate the instance for ``seed``, run the algorithm and check its contracts.

    A given ``instance`` or ``side_info`` is used instead of generating one.

    Raises:
        InvariantViolation: If an always-exact algorithm errs, the ledger
            exceeds the algorithm's proven query budget, or a batch
            exceeds the cap
        ConfigError: If a given instance or side information does not fit the config
    """
    registry = registry or default_registry()
    algorithm = registry.get_algorithm(cfg.algorithm)
    if instance is None:
        instance = gen_instance(cfg.n, cfg.k, cfg.profile, seed)
    elif (instance.n, instance.k) != (cfg.n, cfg.k):
        raise ConfigError(f"Instance has n={instance.n}, k={instance.k} but the config says n={cfg.n}, k={cfg.k}")
    if not algorithm.requires_side_info:
        side_info = None
    elif side_info is not None:
        if side_info.n != instance.n:
            raise ConfigError(f"Side information covers {side_info.n} vertices, the instance has {instance.n}")
    else:
        side_info = gen_sideinfo(instance, cfg.side_info.f_plus, cfg.side_info.f_minus, seed)

    cap = cfg.round_cap
    if cap is None and algorithm.batched:
        cap = default_round_cap(cfg.n)
    session = OracleSession(cfg.oracle.with_seed(seed), instance, cap)
    kwargs = algorithm_kwargs(cfg, seed)

    logger.info("Running %s on n=%d k=%d seed=%d", algorithm.name, cfg.n, cfg.k, seed)
    start = time.perf_counter()
    clustering = algorithm.cluster(session, side_info, **kwargs)
    elapsed = time.perf_counter() - start

    exact, recall = compare_clusterings(clustering, instance, cfg.recall_threshold)
    ledger = session.ledger
    if algorithm.guarantees_exact(**kwargs) and not exact:
        raise InvariantViolation(f"{algorithm.name} returned a wrong clustering on seed {seed}")
    budget = algorithm.query_budget(cfg.n, cfg.k, **kwargs)
    if budget is not None and ledger.query_count > budget:
        raise InvariantViolation(
            f"{algorithm.name} made {ledger.query_count} queries on seed {seed}, over its budget {budget:g}"
        )
    if cap is not None and any(size > cap for size in ledger.per_round_sizes):
        raise InvariantViolation(f"{algorithm.name} exceeded the round cap {cap} on seed {seed}")

    bound = reference_bound(algorithm.bound_kind, cfg.n, cfg.k, cfg.oracle.p, cfg.side_info)
    logger.info(
        "Finished %s seed=%d: %d queries, %d rounds, exact=%s",
        algorithm.name, seed, ledger.query_count, ledger.round_count, exact,
    )
    return RunReport(
        algorithm=algorithm.name,
        n=cfg.n,
        k=cfg.k,
        p=cfg.oracle.p,
        query_count=ledger.query_count,
        round_count=ledger.round_count,
        exact_recovery=exact,
        big_cluster_recall=recall,
        bound_ratio=bound_ratio(ledger.query_count, bound),
        wall_time=elapsed if cfg.record_timing else 0.0,
        seed=seed,
        side_info_reads=side_info.reads if side_info is not None else 0,
        per_phase_counts=dict(sorted(ledger.per_phase_counts.items())),
        per_round_sizes=list(ledger.per_round_sizes),
        solver_flags=list(clustering.solver_flags),
    )


def _run_in_worker(cfg: ExperimentConfig, seed: int) -> RunReport:
    return run_single(cfg, seed)


def run_experiment(cfg: ExperimentConfig, registry: Optional[AlgorithmRegistry] = None) -> List[RunReport]:
    """
    One report per seed, in seed order.

    With ``cfg.workers > 1`` seeds run in a process pool using the built-in
    algorithms; a custom registry is only honoured in-process.

    Raises:
        ConfigError: If the config does not fit the algorithm
    """
    registry = registry or default_registry()
    cfg.validate(registry)
    logger.info("Experiment %s: %d seeds, %d workers", cfg.algorithm, len(cfg.seeds), cfg.workers)
    if cfg.workers == 1:
        return [run_single(cfg, seed, registry) for seed in cfg.seeds]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_run_in_worker, [cfg] * len(cfg.seeds), cfg.seeds))
