"""Discrete probability mass functions on a fixed support grid."""

import json
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

MASS_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class Pmf:
    """
    Probability mass function over q strictly increasing points in [0, 1].

    Holds f+, f- and every empirical distribution the algorithms build.
    Arrays are stored read-only.

    Attributes:
        support: The grid values a_1 < a_2 < ... < a_q
        mass: Nonnegative masses summing to 1 within ``MASS_TOLERANCE``
    """

    support: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        support = np.array(self.support, dtype=float).reshape(-1)
        mass = np.array(self.mass, dtype=float).reshape(-1)
        if support.size == 0:
            raise ValueError("Pmf support must not be empty")
        if support.shape != mass.shape:
            raise ValueError(
                f"Pmf support has {support.size} points but mass has {mass.size} entries"
            )
        if np.any(np.diff(support) <= 0):
            raise ValueError("Pmf support must be strictly increasing")
        if support[0] < 0 or support[-1] > 1:
            raise ValueError("Pmf support must lie in [0, 1]")
        if np.any(mass < 0):
            raise ValueError("Pmf masses must be nonnegative")
        if abs(mass.sum() - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"Pmf masses must sum to 1, got {mass.sum():.12f}")
        support.setflags(write=False)
        mass.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)

    @property
    def q(self) -> int:
        return int(self.support.size)

    @property
    def mean(self) -> float:
        return float(np.dot(self.support, self.mass))

    @property
    def min_mass(self) -> float:
        return float(self.mass.min())

    @property
    def cdf(self) -> np.ndarray:
        return np.cumsum(self.mass)

    def same_support(self, other: "Pmf") -> bool:
        return self.support.shape == other.support.shape and bool(
            np.array_equal(self.support, other.support)
        )

    def require_same_support(self, other: "Pmf") -> None:
        """
        Raises:
            ValueError: If the two pmfs live on different grids
        """
        if not self.same_support(other):
            raise ValueError(
                f"Pmfs have different supports: {list(self.support)} vs {list(other.support)}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return self.same_support(other) and bool(np.array_equal(self.mass, other.mass))

    def __hash__(self) -> int:
        return hash((self.support.tobytes(), self.mass.tobytes()))

    @classmethod
    def from_counts(cls, support: Sequence[float], counts: Sequence[float]) -> "Pmf":
        """
        Normalize a histogram of counts on ``support`` into a pmf.

        Raises:
            ValueError: If the counts sum to zero
        """
        counts = np.asarray(counts, dtype=float)
        total = counts.sum()
        if total <= 0:
            raise ValueError("Cannot build a pmf from an empty histogram")
        return cls(np.asarray(support, dtype=float), counts / total)

    @classmethod
    def point_mass(cls, support: Sequence[float], index: int) -> "Pmf":
        mass = np.zeros(len(support))
        mass[index] = 1.0
        return cls(np.asarray(support, dtype=float), mass)

    @classmethod
    def bernoulli(cls, p: float) -> "Pmf":
        """Bernoulli(p) on the grid {0, 1}."""
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Bernoulli parameter must lie in [0, 1], got {p}")
        return cls(np.array([0.0, 1.0]), np.array([1.0 - p, p]))

    def to_dict(self) -> Dict[str, Any]:
        return {"support": self.support.tolist(), "mass": self.mass.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Pmf":
        return cls(np.asarray(data["support"], dtype=float), np.asarray(data["mass"], dtype=float))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a:g}:{m:.4g}" for a, m in zip(self.support, self.mass))
        return f"Pmf({pairs})"


@dataclass(frozen=True)
class GapParams:
    """Means of f+ and f- and their gap theta_gap = mu_plus - mu_minus."""

    mu_plus: float
    mu_minus: float

    @property
    def theta_gap(self) -> float:
        return self.mu_plus - self.mu_minus

    @classmethod
    def from_pmfs(cls, f_plus: Pmf, f_minus: Pmf) -> "GapParams":
        return cls(f_plus.mean, f_minus.mean)

    def require_positive_gap(self) -> None:
        """
        Raises:
            ValueError: If mu_plus does not exceed mu_minus
        """
        if self.theta_gap <= 0:
            raise ValueError(
                f"Mean-based algorithms need mu_plus > mu_minus, got "
                f"{self.mu_plus} <= {self.mu_minus}"
            )
