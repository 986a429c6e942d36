"""Seeded random streams.

All sampling goes through numpy's PCG64 bit generator. A replicate stream is
identified by ``(seed, stream)``: the generator is seeded with
``SeedSequence(seed, spawn_key=(stream,))``, so streams for different
replicate indices are statistically independent and each one can be replayed
alone.
"""

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64 via SeedSequence(seed, spawn_key=(stream,))"


def make_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if stream is None:
        ss = np.random.SeedSequence(int(seed))
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(ss))
