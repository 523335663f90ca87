"""Deterministic hierarchical RNG streams.

All randomized routines in the package draw from `numpy.random.Generator`
streams derived from a 64-bit base seed plus a structured path
(seed -> phase -> index).  Two runs with the same seed therefore produce
identical results no matter how the work is batched or which worker
executes it.
"""
from __future__ import annotations

import numpy as np

# Phase constants; the values are arbitrary but frozen for reproducibility.
PHASE_WEIGHTS = 1
PHASE_POSITIONS = 2
PHASE_EDGES = 3
PHASE_CALIBRATION = 4
PHASE_ANALYSIS = 5


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator for ``seed`` at a hierarchical ``path``."""
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=tuple(path))
    return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng) -> np.random.Generator:
    """Coerce ``rng`` (Generator, int seed, or None) to a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        return np.random.default_rng()
    return stream(int(rng))
