"""Deterministic seed derivation.

Every random draw in this package is keyed by a seed that is either a plain
integer or a tuple of integers. Derived streams append components to the
tuple, so the stream consumed by e.g. Monte-Carlo sample #412 of replication
#3 is a pure function of the master seed and those indices, independent of
execution order or parallelism.
"""

from __future__ import annotations

import numpy as np

Seed = int | tuple[int, ...]


def subseed(seed: Seed, *parts: int) -> tuple[int, ...]:
    """Derive a child seed by appending integer components."""
    base = (int(seed),) if isinstance(seed, int) else tuple(int(p) for p in seed)
    return base + tuple(int(p) for p in parts)


def make_rng(seed: Seed) -> np.random.Generator:
    """Generator for a (possibly derived) seed; equal seeds give equal streams."""
    entropy = (seed,) if isinstance(seed, int) else seed
    return np.random.default_rng(np.random.SeedSequence(entropy))
