"""Probability mass functions, divergences, thresholds and lower bounds."""

from .bounds import lower_bound_faulty, lower_bound_lasvegas, lower_bound_perfect_side, oracle_delta
from .divergence import (
    INFINITE_DIVERGENCE,
    bernoulli_kl,
    chernoff_exponent,
    gaussian_delta,
    kl,
    symmetric_divergence,
    tv,
)
from .pmf import GapParams, Pmf
from .thresholds import (
    faulty_constants,
    panel_size,
    threshold_M_div,
    threshold_M_mean,
    threshold_M_tv,
    tolerant_ceil,
)

__all__ = [
    "GapParams",
    "INFINITE_DIVERGENCE",
    "Pmf",
    "bernoulli_kl",
    "chernoff_exponent",
    "faulty_constants",
    "gaussian_delta",
    "kl",
    "lower_bound_faulty",
    "lower_bound_lasvegas",
    "lower_bound_perfect_side",
    "oracle_delta",
    "panel_size",
    "symmetric_divergence",
    "threshold_M_div",
    "threshold_M_mean",
    "threshold_M_tv",
    "tolerant_ceil",
]
