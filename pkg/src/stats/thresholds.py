"""Closed-form sample-size thresholds used by the clustering algorithms.

Every threshold accepts ``desk_scale``, a plain multiplier applied before
rounding up, so experiments at small n can shrink the constants without
changing the formulas.
"""

import math
from typing import Tuple

from .divergence import chernoff_exponent
from .pmf import Pmf

CEIL_TOLERANCE = 1e-9


def tolerant_ceil(x: float) -> int:
    """Round up, treating values within ``CEIL_TOLERANCE`` of an integer as that integer."""
    nearest = round(x)
    if abs(x - nearest) <= CEIL_TOLERANCE:
        return int(nearest)
    return int(math.ceil(x))


def _log_n(n: float) -> float:
    if n < 1:
        raise ValueError(f"Vertex count must be at least 1, got {n}")
    return math.log(n)


def _check_scale(desk_scale: float) -> None:
    if desk_scale <= 0:
        raise ValueError(f"desk_scale must be positive, got {desk_scale}")


def threshold_M_mean(n: float, theta_gap: float, desk_scale: float = 1.0) -> int:
    """
    Cluster size after which the mean-rule algorithms stop querying: 6 ln n / theta_gap^2.

    Raises:
        ValueError: If theta_gap is not positive
    """
    if theta_gap <= 0:
        raise ValueError(f"theta_gap must be positive, got {theta_gap}")
    _check_scale(desk_scale)
    return max(1, tolerant_ceil(desk_scale * 6.0 * _log_n(n) / theta_gap ** 2))


def threshold_M_tv(n: float, eps: float, delta: float, desk_scale: float = 1.0) -> int:
    """
    Cluster size from which the TV membership ranking is reliable: 16 ln n / (eps * delta).

    Raises:
        ValueError: If eps or delta is not positive
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    _check_scale(desk_scale)
    return max(1, tolerant_ceil(desk_scale * 16.0 * _log_n(n) / (eps * delta)))


def threshold_M_div(n: float, f_plus: Pmf, f_minus: Pmf, desk_scale: float = 1.0) -> int:
    """
    Cluster size for the divergence decision rule: 8 ln n / chernoff_exponent(f+, f-).

    Raises:
        ValueError: If the exponent is 0 (the pmfs coincide)
    """
    exponent = chernoff_exponent(f_plus, f_minus)
    if exponent <= 0:
        raise ValueError("Divergence threshold undefined: f+ and f- coincide")
    _check_scale(desk_scale)
    return max(1, tolerant_ceil(desk_scale * 8.0 * _log_n(n) / exponent))


def faulty_constants(lam: float, desk_scale: float = 1.0) -> Tuple[float, float]:
    """
    Return ``(c, c_prime) = (6 / lam^2, 36 / lam^2)``, both times ``desk_scale``.

    ``lam = 1/2`` is the noiseless oracle and is accepted.

    Raises:
        ValueError: If lam is outside (0, 1/2]
    """
    if not 0 < lam <= 0.5:
        raise ValueError(f"lambda must lie in (0, 1/2], got {lam}")
    _check_scale(desk_scale)
    c = desk_scale * 6.0 / lam ** 2
    return c, 6.0 * c


def panel_size(n: float, c: float) -> int:
    """Majority-vote panel and cluster-acceptance size ceil(c ln n), at least 1."""
    if c <= 0:
        raise ValueError(f"Constant c must be positive, got {c}")
    return max(1, tolerant_ceil(c * _log_n(n)))
