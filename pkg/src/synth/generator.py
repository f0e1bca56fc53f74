"""Seeded generation of ground-truth instances and side information."""

import logging
from typing import Union

import numpy as np

from ..core.instance import Instance
from ..stats.pmf import Pmf
from .profiles import SizeProfile
from .rng import INSTANCE_STREAM, SIDE_INFO_STREAM, stream_generator
from .sideinfo import SideInfoMatrix

logger = logging.getLogger(__name__)


def gen_instance(n: int, k: int, profile: Union[SizeProfile, str] = "balanced", seed: int = 0) -> Instance:
    """
    Draw a hidden clustering of n vertices into k clusters.

    Cluster sizes come from the profile; which vertices share a cluster is
    a uniform shuffle determined by ``seed``.

    Args:
        n: Number of vertices
        k: Number of clusters
        profile: A SizeProfile or its descriptor such as "skewed:4"
        seed: Non-negative seed

    Returns:
        Instance: The ground truth

    Raises:
        ValueError: If the profile cannot produce k non-empty clusters
    """
    if isinstance(profile, str):
        profile = SizeProfile.parse(profile)
    sizes = profile.sizes(n, k)
    labels = np.repeat(np.arange(k), sizes)
    rng = stream_generator(seed, INSTANCE_STREAM)
    labels = rng.permutation(labels)
    logger.debug("Generated instance n=%d k=%d sizes=%s seed=%d", n, k, sizes, seed)
    return Instance(n=n, k=k, labels=tuple(labels.tolist()), size_profile=str(profile), seed=seed)


def gen_sideinfo(inst: Instance, f_plus: Pmf, f_minus: Pmf, seed: int = 0) -> SideInfoMatrix:
    """
    Draw one similarity value per unordered pair of vertices.

    Intra-cluster pairs are drawn from ``f_plus`` and inter-cluster pairs
    from ``f_minus``. Row ``u`` uses its own random stream keyed by ``(seed, u)``; the
    ``v``-th draw of that stream fixes the pair ``(u, v)`` with ``v < u``.
    Rows can be generated in any order, and growing ``n`` keeps the
    existing entries.

    Raises:
        ValueError: If the two pmfs live on different grids
    """
    f_plus.require_same_support(f_minus)
    n = inst.n
    labels = np.asarray(inst.labels)
    cdf_plus, cdf_minus = f_plus.cdf, f_minus.cdf
    last = f_plus.q - 1
    indices = np.zeros((n, n), dtype=np.uint8)
    for u in range(1, n):
        draws = stream_generator(seed, SIDE_INFO_STREAM, u).random(u)
        same = labels[:u] == labels[u]
        idx = np.where(
            same,
            np.searchsorted(cdf_plus, draws, side="right"),
            np.searchsorted(cdf_minus, draws, side="right"),
        )
        row = np.minimum(idx, last).astype(np.uint8)
        indices[u, :u] = row
        indices[:u, u] = row
    return SideInfoMatrix(f_plus.support, indices)
