"""Reference values of the query lower bounds.

The asymptotic constants are taken as 1. The values are used only to
report how far an algorithm's query count is from the bound.
"""

import math

from .divergence import INFINITE_DIVERGENCE, bernoulli_kl


def lower_bound_perfect_side(k: int, delta: float) -> float:
    """k^2 / Delta(f+, f-) for a perfect oracle with side information."""
    if delta < 0:
        raise ValueError(f"Divergence must be non-negative, got {delta}")
    if math.isinf(delta):
        return 0.0
    if delta == 0:
        return INFINITE_DIVERGENCE
    return k * k / delta


def lower_bound_lasvegas(n: int, k: int, delta: float) -> float:
    """n + k^2 / min(1, Delta(f+, f-)) for an always-correct algorithm."""
    if delta < 0:
        raise ValueError(f"Divergence must be non-negative, got {delta}")
    if delta == 0:
        return INFINITE_DIVERGENCE
    return n + k * k / min(1.0, delta)


def lower_bound_faulty(n: int, k: int, p: float) -> float:
    """
    n k / D(p || 1-p) for a faulty oracle without side information.

    ``p = 0`` gives n k; ``p = 1/2`` carries no information and gives the
    infinite sentinel.

    Raises:
        ValueError: If p is outside [0, 1/2]
    """
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"Error rate must lie in [0, 1/2], got {p}")
    if p == 0:
        return float(n * k)
    divergence = bernoulli_kl(p, 1.0 - p)
    if divergence == 0:
        return INFINITE_DIVERGENCE
    return n * k / divergence


def oracle_delta(p: float) -> float:
    """Symmetric divergence Delta(p, 1-p) of the oracle channel; infinite at p = 0."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"Error rate must lie in [0, 1/2], got {p}")
    return bernoulli_kl(p, 1.0 - p) + bernoulli_kl(1.0 - p, p)
