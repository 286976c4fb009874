"""Seeded random streams.

Every stream is a numpy ``Generator`` over PCG64, seeded by a
``SeedSequence`` built from the 64-bit global seed plus integer keys
(column index, trial index, ...).  Streams for different keys are
statistically independent and reproducible bit-for-bit across runs.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def rng_for(seed: int, *keys: int) -> np.random.Generator:
    entropy = [int(seed) & MASK64, *(int(k) & MASK64 for k in keys)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def as_rng(source, *keys: int) -> np.random.Generator:
    """Accept an existing Generator or an integer seed."""
    if isinstance(source, np.random.Generator):
        return source
    return rng_for(0 if source is None else source, *keys)
