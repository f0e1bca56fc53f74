"""Seeded instance and side-information generation."""

from .generator import gen_instance, gen_sideinfo
from .presets import (
    PRESETS,
    SideInfoModel,
    bernoulli_grid_pmfs,
    example2_pmfs,
    gaussian_pmfs,
    pointmass_pmfs,
    resolve_side_info,
)
from .profiles import SizeProfile, regimes
from .sideinfo import SideInfoMatrix

__all__ = [
    "PRESETS",
    "SideInfoMatrix",
    "SideInfoModel",
    "SizeProfile",
    "bernoulli_grid_pmfs",
    "example2_pmfs",
    "gaussian_pmfs",
    "gen_instance",
    "gen_sideinfo",
    "pointmass_pmfs",
    "regimes",
    "resolve_side_info",
]
