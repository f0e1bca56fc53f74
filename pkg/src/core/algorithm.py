"""Abstract base class for all clustering algorithms."""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Optional

from .clustering import Clustering

if TYPE_CHECKING:
    from ..oracle.session import OracleSession
    from ..synth.sideinfo import SideInfoMatrix


class ClusteringAlgorithm(ABC):
    """
    Abstract base class for algorithms that recover a hidden clustering.

    All algorithm implementations must inherit from this class and implement
    the required properties and methods. An algorithm observes the ground
    truth only through the oracle session it is handed.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        Return the command-line name of this algorithm.

        Returns:
            str: Name such as "baseline" or "alg1a-mc"
        """
        pass

    @property
    @abstractmethod
    def oracle_mode(self) -> str:
        """
        Return the oracle this algorithm is designed for.

        Returns:
            str: "perfect" or "faulty"
        """
        pass

    @property
    def requires_side_info(self) -> bool:
        """Whether the algorithm needs a side-information matrix."""
        return False

    @property
    def batched(self) -> bool:
        """Whether the algorithm issues its queries in batch rounds."""
        return False

    @property
    def las_vegas(self) -> bool:
        """Whether the output is guaranteed to equal the ground truth."""
        return False

    @property
    def bound_kind(self) -> Optional[str]:
        """
        Return which lower-bound reference value applies.

        Returns:
            Optional[str]: "perfect_side", "lasvegas", "faulty" or None
        """
        return None

    @abstractmethod
    def cluster(
        self,
        session: "OracleSession",
        side_info: Optional["SideInfoMatrix"] = None,
        **kwargs,
    ) -> Clustering:
        """
        Recover the clustering behind the session's oracle.

        Args:
            session: Oracle session, the only access to the ground truth
            side_info: Similarity matrix, for algorithms that use one
            **kwargs: Algorithm parameters and model knowledge

        Returns:
            Clustering: The recovered partition

        Raises:
            ValueError: If the session or parameters do not fit the algorithm
        """
        pass

    def query_budget(self, n: int, k: int, **kwargs) -> Optional[float]:
        """
        Return a hard cap on distinct queries for one run, if the theory gives one.

        Args:
            n: Number of vertices
            k: True number of clusters (used only for checking, never by the run)
            **kwargs: The same parameters passed to ``cluster``

        Returns:
            Optional[float]: The cap, or None when no cap applies
        """
        return None

    def guarantees_exact(self, **kwargs) -> bool:
        """
        Whether a run with these parameters must return the ground truth.

        Defaults to ``las_vegas``; algorithms with a Las Vegas switch
        override this.
        """
        return self.las_vegas

    def validate_session(self, session: "OracleSession", side_info=None) -> None:
        """
        Validate that the session and side information suit this algorithm.

        Raises:
            ValueError: If the oracle mode or side information do not match
        """
        if self.oracle_mode == "perfect" and session.mode != "perfect":
            raise ValueError(
                f"Algorithm '{self.name}' needs a perfect oracle, got '{session.mode}'"
            )
        if self.oracle_mode == "faulty" and session.mode != "faulty":
            raise ValueError(
                f"Algorithm '{self.name}' needs a faulty oracle, got '{session.mode}'"
            )
        if self.requires_side_info and side_info is None:
            raise ValueError(f"Algorithm '{self.name}' needs side information")
        if side_info is not None and side_info.n != session.n:
            raise ValueError(
                f"Side information covers {side_info.n} vertices, session has {session.n}"
            )
        if self.batched and session.round_cap is None:
            raise ValueError(f"Algorithm '{self.name}' needs a session with a round cap")
