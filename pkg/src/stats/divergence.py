"""Information-theoretic distances between pmfs on a shared grid."""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import rel_entr

from .pmf import Pmf

logger = logging.getLogger(__name__)

# Sentinel for divergences that are unbounded because q has a zero where p
# does not. It propagates through sums and divisions without producing NaN.
INFINITE_DIVERGENCE = math.inf

_CHERNOFF_TOLERANCE = 1e-10


def kl(p: Pmf, q: Pmf) -> float:
    """
    Kullback-Leibler divergence D(p||q) in nats.

    Terms with p(i) = 0 contribute 0; a term with p(i) > 0 and q(i) = 0
    makes the result ``INFINITE_DIVERGENCE``.

    Raises:
        ValueError: If the supports differ
    """
    p.require_same_support(q)
    value = float(np.sum(rel_entr(p.mass, q.mass)))
    if math.isinf(value):
        return INFINITE_DIVERGENCE
    # rel_entr terms sum to >= 0 analytically; clip rounding noise
    return max(value, 0.0)


def symmetric_divergence(p: Pmf, q: Pmf) -> float:
    """Delta(p, q) = D(p||q) + D(q||p)."""
    return kl(p, q) + kl(q, p)


def tv(p: Pmf, q: Pmf) -> float:
    """
    Total variation distance, half the l1 distance between the masses.

    Raises:
        ValueError: If the supports differ
    """
    p.require_same_support(q)
    return float(0.5 * np.abs(p.mass - q.mass).sum())


def bernoulli_kl(p: float, q: float) -> float:
    """D(Bern(p)||Bern(q)); used for the oracle channel D(p||1-p)."""
    return kl(Pmf.bernoulli(p), Pmf.bernoulli(q))


def gaussian_delta(mu1: float, mu2: float, sigma: float) -> float:
    """
    Symmetric divergence of two normals with a common standard deviation.

    For N(mu1, sigma) and N(mu2, sigma) each KL direction equals
    (mu1 - mu2)^2 / (2 sigma^2), so Delta = (mu1 - mu2)^2 / sigma^2.

    Raises:
        ValueError: If sigma is not positive
    """
    if sigma <= 0:
        raise ValueError(f"Standard deviation must be positive, got {sigma}")
    return (mu1 - mu2) ** 2 / sigma ** 2


def tilted(f_plus: Pmf, f_minus: Pmf, lam: float) -> Pmf:
    """Geometric mixture p_lam(i) proportional to f+(i)^lam * f-(i)^(1-lam)."""
    log_w = lam * np.log(f_plus.mass) + (1.0 - lam) * np.log(f_minus.mass)
    log_w -= log_w.max()
    w = np.exp(log_w)
    return Pmf(f_plus.support, w / w.sum())


def _tilt_root(f_plus: Pmf, f_minus: Pmf) -> Optional[float]:
    """Tilt lam in [0, 1] where D(p_lam||f+) = D(p_lam||f-), or None if the pmfs coincide."""
    f_plus.require_same_support(f_minus)
    if f_plus.min_mass <= 0 or f_minus.min_mass <= 0:
        raise ValueError("Chernoff exponent needs strictly positive pmfs on the shared support")

    def gap(lam: float) -> float:
        p = tilted(f_plus, f_minus, lam)
        return kl(p, f_plus) - kl(p, f_minus)

    lo, hi = gap(0.0), gap(1.0)
    if lo <= _CHERNOFF_TOLERANCE or hi >= -_CHERNOFF_TOLERANCE:
        logger.debug("Chernoff bracket (%.3g, %.3g) has no sign change; pmfs coincide", lo, hi)
        return None
    lam = brentq(gap, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    residual = abs(gap(lam))
    if residual > _CHERNOFF_TOLERANCE:
        logger.warning("Chernoff root residual %.3g above tolerance", residual)
    return lam


def chernoff_exponent(f_plus: Pmf, f_minus: Pmf) -> float:
    """
    Minimum of D(p||f+) over all p with D(p||f+) = D(p||f-).

    The minimiser lies on the tilted family between f- (lam = 0) and
    f+ (lam = 1); the root of D(p_lam||f+) - D(p_lam||f-) is bracketed by
    [0, 1] and solved with Brent's method.

    Args:
        f_plus: Intra-cluster pmf, strictly positive on the support
        f_minus: Inter-cluster pmf, strictly positive on the same support

    Returns:
        float: The exponent; 0 when the two pmfs coincide

    Raises:
        ValueError: On mismatched supports or a zero mass
    """
    lam = _tilt_root(f_plus, f_minus)
    if lam is None:
        return 0.0
    return kl(tilted(f_plus, f_minus, lam), f_plus)


def chernoff_optimizer(f_plus: Pmf, f_minus: Pmf) -> Tuple[float, Pmf]:
    """Return ``(exponent, minimising pmf)``; the pmf is f+ when they coincide."""
    lam = _tilt_root(f_plus, f_minus)
    if lam is None:
        return 0.0, f_plus
    p = tilted(f_plus, f_minus, lam)
    return kl(p, f_plus), p
