"""Core domain types and the algorithm framework."""

from .algorithm import ClusteringAlgorithm
from .clustering import Clustering, compare_clusterings
from .errors import BatchCapExceeded, ConfigError, DuplicateAlgorithmError, InvariantViolation
from .instance import Instance
from .ledger import QueryLedger, pair_key
from .parameterized_algorithm import ParameterizedAlgorithm
from .registry import AlgorithmRegistry, get_global_registry
from .report import CSV_COLUMNS, RunReport
from .signed_graph import SignedGraph

__all__ = [
    "AlgorithmRegistry",
    "BatchCapExceeded",
    "CSV_COLUMNS",
    "Clustering",
    "ClusteringAlgorithm",
    "ConfigError",
    "DuplicateAlgorithmError",
    "Instance",
    "InvariantViolation",
    "ParameterizedAlgorithm",
    "QueryLedger",
    "RunReport",
    "SignedGraph",
    "compare_clusterings",
    "get_global_registry",
    "pair_key",
]
