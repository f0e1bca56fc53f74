"""Named side-information models (pairs of f+ and f-)."""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.stats import norm

from ..stats.divergence import symmetric_divergence
from ..stats.pmf import GapParams, Pmf

logger = logging.getLogger(__name__)


def _cell_edges(grid_size: int) -> np.ndarray:
    if grid_size < 1:
        raise ValueError(f"Grid size must be at least 1, got {grid_size}")
    return np.linspace(0.0, 1.0, grid_size + 1)


def _cell_midpoints(edges: np.ndarray) -> np.ndarray:
    return 0.5 * (edges[:-1] + edges[1:])


def example2_pmfs(eps: float, grid_size: int = 2) -> Tuple[Pmf, Pmf]:
    """
    Quantized perturbations of the uniform density on [0, 1].

    f- has density 1 + eps on [0, 1/2) and 1 - eps on [1/2, 1]; f+ is the
    mirror image. Each density is integrated over ``grid_size`` equal cells
    and placed at the cell midpoints.

    Returns:
        Tuple[Pmf, Pmf]: ``(f_plus, f_minus)``

    Raises:
        ValueError: If eps is outside [0, 1)
    """
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"Perturbation eps must lie in [0, 1), got {eps}")
    edges = _cell_edges(grid_size)
    lower = np.clip(np.minimum(edges[1:], 0.5) - edges[:-1], 0.0, None)
    upper = np.clip(edges[1:] - np.maximum(edges[:-1], 0.5), 0.0, None)
    f_minus = (1.0 + eps) * lower + (1.0 - eps) * upper
    f_plus = (1.0 - eps) * lower + (1.0 + eps) * upper
    support = _cell_midpoints(edges)
    return Pmf(support, f_plus / f_plus.sum()), Pmf(support, f_minus / f_minus.sum())


def pointmass_pmfs() -> Tuple[Pmf, Pmf]:
    """Noiseless side information: 1 inside a cluster, 0 across clusters."""
    support = np.array([0.0, 1.0])
    return Pmf.point_mass(support, 1), Pmf.point_mass(support, 0)


def bernoulli_grid_pmfs(p_plus: float, p_minus: float) -> Tuple[Pmf, Pmf]:
    """Bern(p_plus) and Bern(p_minus) on the grid {0, 1}."""
    return Pmf.bernoulli(p_plus), Pmf.bernoulli(p_minus)


def gaussian_pmfs(mu_plus: float, mu_minus: float, sigma: float, grid_size: int = 10) -> Tuple[Pmf, Pmf]:
    """
    Normal densities truncated to [0, 1] and quantized onto equal cells.

    Raises:
        ValueError: If sigma is not positive
    """
    if sigma <= 0:
        raise ValueError(f"Standard deviation must be positive, got {sigma}")
    edges = _cell_edges(grid_size)
    support = _cell_midpoints(edges)

    def quantize(mu: float) -> Pmf:
        mass = np.diff(norm.cdf(edges, loc=mu, scale=sigma))
        if mass.sum() <= 0:
            raise ValueError(f"Normal(mu={mu}, sigma={sigma}) puts no mass on [0, 1]")
        return Pmf(support, mass / mass.sum())

    return quantize(mu_plus), quantize(mu_minus)


def explicit_pmfs(support, f_plus, f_minus) -> Tuple[Pmf, Pmf]:
    return Pmf(np.asarray(support, dtype=float), f_plus), Pmf(np.asarray(support, dtype=float), f_minus)


PRESETS: Dict[str, Callable[..., Tuple[Pmf, Pmf]]] = {
    "example2": example2_pmfs,
    "pointmass": pointmass_pmfs,
    "bernoulli-grid": bernoulli_grid_pmfs,
    "gaussian": gaussian_pmfs,
}


@dataclass(frozen=True)
class SideInfoModel:
    """
    The pair (f+, f-) a side-information matrix is drawn from.

    Attributes:
        name: Preset name, or "explicit"
        f_plus: Intra-cluster pmf
        f_minus: Inter-cluster pmf
        params: Preset arguments, for reports
    """

    name: str
    f_plus: Pmf
    f_minus: Pmf
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.f_plus.require_same_support(self.f_minus)

    @property
    def gap(self) -> GapParams:
        return GapParams.from_pmfs(self.f_plus, self.f_minus)

    @property
    def delta(self) -> float:
        return symmetric_divergence(self.f_plus, self.f_minus)

    @property
    def eps(self) -> float:
        """Smallest mass of either pmf."""
        return min(self.f_plus.min_mass, self.f_minus.min_mass)

    def knowledge(self) -> Dict[str, Any]:
        """Model parameters offered to algorithms as keyword arguments."""
        gap = self.gap
        return {
            "f_plus": self.f_plus,
            "f_minus": self.f_minus,
            "mu_plus": gap.mu_plus,
            "mu_minus": gap.mu_minus,
            "delta": self.delta,
            "eps": self.eps,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "preset": self.name,
            "params": dict(self.params),
            "f_plus": self.f_plus.to_dict(),
            "f_minus": self.f_minus.to_dict(),
        }


def resolve_side_info(spec: Optional[Dict[str, Any]]) -> Optional[SideInfoModel]:
    """
    Turn a side-information config entry into a model.

    ``None`` means no side information. A dict either names a preset
    (``{"preset": "example2", "eps": 0.3, "grid_size": 2}``) or gives the
    pmfs explicitly (``{"support": [...], "f_plus": [...], "f_minus": [...]}``).

    Raises:
        KeyError: If the preset name is unknown
        ValueError: If the preset arguments are invalid
    """
    if spec is None:
        return None
    spec = dict(spec)
    if "preset" not in spec:
        missing = [key for key in ("support", "f_plus", "f_minus") if key not in spec]
        if missing:
            raise ValueError(f"Explicit side information is missing {', '.join(missing)}")
        f_plus, f_minus = explicit_pmfs(spec["support"], spec["f_plus"], spec["f_minus"])
        return SideInfoModel("explicit", f_plus, f_minus)

    name = spec.pop("preset")
    if name not in PRESETS:
        raise KeyError(f"Unknown side-information preset '{name}'. Available: {', '.join(sorted(PRESETS))}")
    try:
        f_plus, f_minus = PRESETS[name](**spec)
    except TypeError as e:
        raise ValueError(f"Invalid arguments for preset '{name}': {e}") from e
    logger.debug("Resolved side-information preset %s with %s", name, spec)
    return SideInfoModel(name, f_plus, f_minus, spec)
