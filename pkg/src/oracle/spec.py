"""Oracle configuration."""

from dataclasses import dataclass
from typing import Any, Dict

ORACLE_MODES = ("perfect", "faulty")


@dataclass(frozen=True)
class OracleSpec:
    """
    Which oracle answers the queries of a run.

    Attributes:
        mode: "perfect" or "faulty"
        p: Probability that a faulty oracle flips an answer, in [0, 1/2)
        seed: Seed of the persistent answer noise
    """

    mode: str = "perfect"
    p: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ORACLE_MODES:
            raise ValueError(
                f"Unsupported oracle mode '{self.mode}', expected one of {', '.join(ORACLE_MODES)}"
            )
        if not 0.0 <= self.p < 0.5:
            raise ValueError(f"Oracle error rate must lie in [0, 1/2), got {self.p}")
        if self.mode == "perfect" and self.p != 0.0:
            raise ValueError(f"A perfect oracle cannot have error rate {self.p}")
        if self.seed < 0:
            raise ValueError(f"Oracle seed must be non-negative, got {self.seed}")

    @property
    def lam(self) -> float:
        """Channel margin lambda = 1/2 - p."""
        return 0.5 - self.p

    def with_seed(self, seed: int) -> "OracleSpec":
        return OracleSpec(self.mode, self.p, seed)

    def to_dict(self) -> Dict[str, Any]:
        return {"mode": self.mode, "p": self.p, "seed": self.seed}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OracleSpec":
        return cls(
            mode=str(data.get("mode", "perfect")),
            p=float(data.get("p", 0.0)),
            seed=int(data.get("seed", 0)),
        )
