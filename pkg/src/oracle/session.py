"""Oracle session: the only channel through which algorithms observe the truth."""

import logging
import math
from contextlib import contextmanager
from typing import Iterator, List, Optional, Sequence, Tuple

from ..core.errors import BatchCapExceeded
from ..core.instance import Instance
from ..core.ledger import QueryLedger, pair_key
from ..synth.rng import ORACLE_STREAM, pair_uniform
from .spec import OracleSpec

logger = logging.getLogger(__name__)


def default_round_cap(n: int) -> int:
    """Batch cap ceil(n log2 n), at least 1."""
    if n < 2:
        return 1
    return max(1, math.ceil(n * math.log2(n)))


class OracleSession:
    """
    Answers pairwise "same cluster?" queries about a hidden instance.

    A perfect oracle answers +1 exactly when both vertices share a cluster.
    A faulty oracle flips that answer with probability ``p``; the flip is a
    fixed function of ``(seed, pair)`` and the first answer is memoized, so
    asking a pair again returns the same answer and costs nothing.

    The instance itself is not exposed. A session is single-writer.

    Args:
        spec: Oracle mode, error rate and noise seed
        truth: The hidden instance
        round_cap: Largest batch ``batch_query`` accepts; None disables batches
    """

    def __init__(self, spec: OracleSpec, truth: Instance, round_cap: Optional[int] = None):
        if round_cap is not None and round_cap < 1:
            raise ValueError(f"Round cap must be at least 1, got {round_cap}")
        self._spec = spec
        self._labels = truth.labels
        self._n = truth.n
        self._memo = {}
        self._round_cap = round_cap
        self._phase = "default"
        self.ledger = QueryLedger()

    @property
    def spec(self) -> OracleSpec:
        return self._spec

    @property
    def mode(self) -> str:
        return self._spec.mode

    @property
    def n(self) -> int:
        return self._n

    @property
    def round_cap(self) -> Optional[int]:
        return self._round_cap

    @property
    def query_count(self) -> int:
        return self.ledger.query_count

    @property
    def round_count(self) -> int:
        return self.ledger.round_count

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        """Attribute the distinct queries made inside the block to ``name``."""
        previous = self._phase
        self._phase = name
        try:
            yield
        finally:
            self._phase = previous

    def has_asked(self, u: int, v: int) -> bool:
        return self.ledger.has(u, v)

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"Cannot query vertex {u} with itself")
        for x in (u, v):
            if not 0 <= x < self._n:
                raise ValueError(f"Vertex {x} out of range [0, {self._n})")

    def _answer(self, u: int, v: int) -> int:
        key = pair_key(u, v)
        answer = self._memo.get(key)
        if answer is None:
            answer = 1 if self._labels[u] == self._labels[v] else -1
            if self._spec.p > 0 and pair_uniform(self._spec.seed, ORACLE_STREAM, *key) < self._spec.p:
                answer = -answer
            self._memo[key] = answer
            self.ledger.record(u, v, self._phase)
        return answer

    def query(self, u: int, v: int) -> int:
        """
        Ask whether ``u`` and ``v`` share a cluster.

        Returns:
            int: +1 for "same cluster", -1 otherwise

        Raises:
            ValueError: On a self-query or an out-of-range vertex
        """
        self._check_pair(u, v)
        return self._answer(u, v)

    def batch_query(self, pairs: Sequence[Tuple[int, int]], force_round: bool = False) -> List[int]:
        """
        Ask a batch of pairs as one round.

        Pairs already asked are answered from memory without being counted
        again. An empty batch consumes no round unless ``force_round`` is
        set, which records a zero-size round for a step whose outcome is
        already determined.

        Raises:
            ValueError: If the session has no round cap or a pair is invalid
            BatchCapExceeded: If the batch is larger than the cap
        """
        if self._round_cap is None:
            raise ValueError("batch_query needs a session with a round cap")
        pairs = list(pairs)
        if len(pairs) > self._round_cap:
            raise BatchCapExceeded(
                f"Batch of {len(pairs)} queries exceeds the round cap {self._round_cap}"
            )
        for u, v in pairs:
            self._check_pair(u, v)
        if not pairs and not force_round:
            return []
        answers = [self._answer(u, v) for u, v in pairs]
        self.ledger.record_round(len(pairs))
        logger.debug("Round %d: %d queries", self.ledger.round_count, len(pairs))
        return answers

    def __repr__(self) -> str:
        return (
            f"OracleSession(mode={self.mode}, n={self._n}, queries={self.query_count}, "
            f"rounds={self.round_count})"
        )
