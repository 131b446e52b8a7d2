"""Seeded random streams.

Every random draw in covarray comes from numpy's PCG64 bit generator seeded
through ``SeedSequence(seed, spawn_key=keys)``.  Substreams are addressed by
integer counters (copy index, column index, ...) rather than by the order in
which they are consumed, so results do not depend on evaluation order or on
the number of threads.
"""

import numpy as np


def generator(seed: int, *keys: int) -> np.random.Generator:
    if seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seeds and stream keys must be non-negative integers")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))
