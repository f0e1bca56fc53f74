"""Counter-based random streams keyed by (seed, stream, indices).

Each draw is derived from its own ``SeedSequence`` spawn key, so the value
of a draw never depends on the order in which draws are made.
"""

from typing import Tuple

import numpy as np

INSTANCE_STREAM = 0
SIDE_INFO_STREAM = 1
ORACLE_STREAM = 2
SAMPLING_STREAM = 3

_UINT64_SPAN = float(2 ** 64)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"Seeds must be non-negative integers, got {seed}")
    return seed


def stream_generator(seed: int, stream: int, *key: int) -> np.random.Generator:
    """Generator for the sub-stream ``(stream, *key)`` of ``seed``."""
    spawn_key: Tuple[int, ...] = (int(stream),) + tuple(int(k) for k in key)
    return np.random.default_rng(np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=spawn_key))


def pair_uniform(seed: int, stream: int, u: int, v: int) -> float:
    """Uniform draw in [0, 1) attached to the unordered pair ``{u, v}``."""
    lo, hi = (u, v) if u < v else (v, u)
    sequence = np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=(int(stream), int(lo), int(hi)))
    return float(sequence.generate_state(1, np.uint64)[0]) / _UINT64_SPAN
