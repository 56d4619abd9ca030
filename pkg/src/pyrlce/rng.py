"""Random sources.

Every sampling routine takes a :class:`numpy.random.Generator`.  The
generators built here run on ChaCha20, so a seeded source yields the same
stream on every platform and an unseeded one draws its key from the OS.
"""

from __future__ import annotations

import secrets

import numpy as np
from randomgen import ChaCha


def make_rng(seed: int | None = None) -> np.random.Generator:
    if seed is None:
        seed = secrets.randbits(256)
    return np.random.Generator(ChaCha(seed=seed, rounds=20))


def spawn(rng: np.random.Generator, count: int) -> list[np.random.Generator]:
    """Independent child sources, e.g. one per experiment trial."""
    seeds = rng.integers(0, 2**63, size=count, dtype=np.int64)
    return [make_rng(int(s)) for s in seeds]
