"""Seeded random streams.

Every stochastic routine draws from ``numpy.random.Generator`` over the PCG64
bit generator (64-bit state advance, 128-bit state), seeded with a plain
non-negative integer. PCG64 output for a given seed is platform independent.
"""

import numpy as np

SEED_MAX = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return np.random.Generator(np.random.PCG64(seed))
