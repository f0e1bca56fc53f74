"""Parameterized algorithm base class for algorithms with tunable parameters."""

from typing import Any, Dict, Optional

from .algorithm import ClusteringAlgorithm
from .clustering import Clustering


class ParameterizedAlgorithm(ClusteringAlgorithm):
    """
    Base class for algorithms that take declared parameters.

    This extends the ClusteringAlgorithm base class with a parameter table.
    Callers may pass any keyword arguments; declared parameters missing from
    the call take their default, required parameters without a default are
    an error, and undeclared arguments are forwarded untouched so model
    knowledge (``f_plus``, ``mu_plus``, ``lam``, ...) can be offered to every
    algorithm alike.

    Subclasses implement ``_cluster_with_params``.
    """

    @property
    def parameters(self) -> Optional[Dict[str, Dict[str, Any]]]:
        """
        Return parameter configuration for this algorithm.

        Returns None if no parameters are needed. Otherwise returns a dict
        where keys are parameter names and values are configuration dicts with
        the following structure:
            {
                "label": "Human-readable description",
                "default": default value (None if there is none),
                "required": True/False
            }

        Returns:
            Optional[Dict[str, Dict[str, Any]]]: Parameter configuration or None
        """
        return None

    def resolve_parameters(self, **kwargs) -> Dict[str, Any]:
        """
        Merge call arguments with declared defaults.

        Raises:
            ValueError: If a required parameter is missing
        """
        resolved = dict(kwargs)
        for key, spec in (self.parameters or {}).items():
            if resolved.get(key) is None:
                if spec.get("required") and spec.get("default") is None:
                    raise ValueError(
                        f"Algorithm '{self.name}' requires parameter '{key}' ({spec['label']})"
                    )
                resolved[key] = spec.get("default")
        return resolved

    def cluster(self, session, side_info=None, **kwargs) -> Clustering:
        """
        Validate inputs, resolve parameters and run the algorithm.

        Raises:
            ValueError: If the session, side information or parameters are invalid
        """
        self.validate_session(session, side_info)
        params = self.resolve_parameters(**kwargs)
        return self._cluster_with_params(session, side_info, **params)

    def _cluster_with_params(self, session, side_info, **kwargs) -> Clustering:
        """
        Perform the actual clustering with resolved parameters.

        Raises:
            NotImplementedError: If not implemented by subclass
        """
        raise NotImplementedError(
            f"{self.__class__.__name__} must implement _cluster_with_params method"
        )
