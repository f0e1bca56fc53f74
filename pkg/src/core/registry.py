"""Algorithm registry: CLI names mapped to algorithm plugins."""

import logging
import re
from functools import lru_cache
from typing import Dict, List, Type

from .algorithm import ClusteringAlgorithm
from .errors import ConfigError, DuplicateAlgorithmError

logger = logging.getLogger(__name__)

NAME_PATTERN = re.compile(r"^[a-z][a-z0-9-]*$")


@lru_cache(maxsize=None)
def builtin_names() -> Dict[str, Type[ClusteringAlgorithm]]:
    """CLI name of every built-in algorithm, mapped to its class."""
    from ..algorithms import BUILTIN_ALGORITHMS

    return {cls().name: cls for cls in BUILTIN_ALGORITHMS}


class AlgorithmRegistry:
    """
    Algorithms addressable by their command-line name.

    Built-in names are reserved: only the built-in class (or a subclass of
    it) may be registered under one. Other plugins need a lowercase,
    hyphenated name of their own.
    """

    def __init__(self):
        self._algorithms: Dict[str, ClusteringAlgorithm] = {}

    def register(self, algorithm: ClusteringAlgorithm) -> None:
        """
        Register an algorithm instance under its name.

        Raises:
            ConfigError: If the name is malformed or reserved by a built-in
                algorithm of another class
            DuplicateAlgorithmError: If the name is already registered
        """
        name = algorithm.name
        if not NAME_PATTERN.match(name):
            raise ConfigError(f"Algorithm name '{name}' must be lowercase letters, digits and hyphens")
        owner = builtin_names().get(name)
        if owner is not None and not isinstance(algorithm, owner):
            raise ConfigError(f"Algorithm name '{name}' is reserved for {owner.__name__}")
        if name in self._algorithms:
            raise DuplicateAlgorithmError(f"Algorithm '{name}' is already registered")
        self._algorithms[name] = algorithm
        logger.debug("Registered algorithm %s (%s)", name, type(algorithm).__name__)

    def get_algorithm(self, name: str) -> ClusteringAlgorithm:
        """
        Raises:
            KeyError: If no algorithm with the given name is registered
        """
        try:
            return self._algorithms[name]
        except KeyError:
            raise KeyError(
                f"No algorithm named '{name}' is registered. "
                f"Available: {', '.join(self._algorithms) or 'none'}"
            ) from None

    def get_all_algorithms(self) -> List[ClusteringAlgorithm]:
        return list(self._algorithms.values())

    def get_algorithm_names(self) -> List[str]:
        return list(self._algorithms)

    def has_algorithm(self, name: str) -> bool:
        return name in self._algorithms


_global_registry = AlgorithmRegistry()


def get_global_registry() -> AlgorithmRegistry:
    """The process-wide registry used by the CLI and the experiment runner."""
    return _global_registry
