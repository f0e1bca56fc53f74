"""Algorithm plugins."""

from .baseline import BaselineAlgorithm, baseline_nk
from .config import FaultyConfig, RoundConfig
from .crowd_cluster import CrowdClusterAlgorithm, alg1_lasvegas
from .faulty_noside import FaultyNoSideAlgorithm, FaultyNoSidePolyAlgorithm, alg2, alg2_poly
from .faulty_side import FaultySideAlgorithm, alg3
from .membership import MembershipScorer, MembershipTable, avg_membership, inter_dist, intra_dist, membership
from .ml import corrclust_objective, ml_estimate, ml_objective
from .rounds_faulty import FaultyNoSideRounds, rounds_faulty_noside
from .rounds_perfect import PerfectNoSideRounds, PerfectSideRounds, rounds_perfect_noside, rounds_perfect_side
from .subgraph import SubgraphResult, max_weight_subgraph
from .two_phase import (
    DivergenceRuleAlgorithm,
    MeanRuleLasVegas,
    MeanRuleMonteCarlo,
    alg1a_lasvegas,
    alg1a_montecarlo,
    alg_div_montecarlo,
)

BUILTIN_ALGORITHMS = (
    BaselineAlgorithm,
    CrowdClusterAlgorithm,
    MeanRuleMonteCarlo,
    MeanRuleLasVegas,
    DivergenceRuleAlgorithm,
    FaultyNoSideAlgorithm,
    FaultyNoSidePolyAlgorithm,
    FaultySideAlgorithm,
    PerfectNoSideRounds,
    PerfectSideRounds,
    FaultyNoSideRounds,
)


def register_builtin_algorithms(registry) -> None:
    """Register every built-in algorithm that is not registered yet."""
    for cls in BUILTIN_ALGORITHMS:
        algorithm = cls()
        if not registry.has_algorithm(algorithm.name):
            registry.register(algorithm)


__all__ = [
    "BUILTIN_ALGORITHMS",
    "BaselineAlgorithm",
    "CrowdClusterAlgorithm",
    "DivergenceRuleAlgorithm",
    "FaultyConfig",
    "FaultyNoSideAlgorithm",
    "FaultyNoSidePolyAlgorithm",
    "FaultyNoSideRounds",
    "FaultySideAlgorithm",
    "MeanRuleLasVegas",
    "MeanRuleMonteCarlo",
    "MembershipScorer",
    "MembershipTable",
    "PerfectNoSideRounds",
    "PerfectSideRounds",
    "RoundConfig",
    "SubgraphResult",
    "alg1_lasvegas",
    "alg1a_lasvegas",
    "alg1a_montecarlo",
    "alg2",
    "alg2_poly",
    "alg3",
    "alg_div_montecarlo",
    "avg_membership",
    "baseline_nk",
    "corrclust_objective",
    "inter_dist",
    "intra_dist",
    "max_weight_subgraph",
    "membership",
    "ml_estimate",
    "ml_objective",
    "register_builtin_algorithms",
    "rounds_faulty_noside",
    "rounds_perfect_noside",
    "rounds_perfect_side",
]
