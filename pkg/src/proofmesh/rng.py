"""Named, seeded random substreams.

Every random draw in the toolkit flows from one integer seed; the name
keeps unrelated consumers (toxic values, blinding, test inputs)
independent of each other and of call order.
"""

import zlib

import numpy as np


def substream(seed: int, name: str, *extra: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    key = (zlib.crc32(name.encode()),) + tuple(extra)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))
