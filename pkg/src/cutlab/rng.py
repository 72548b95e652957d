"""Reproducible random streams.

Every sampler in this package draws from a counter-based Philox generator,
keyed by a (seed, stream) pair.  Stream k of a given seed is reproducible
without generating streams 0..k-1, so independent Monte Carlo trials can be
dealt out to workers and replayed individually.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSpec:
    """A (master seed, stream index) pair naming one random stream."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        if not 0 <= self.stream <= _MASK64:
            raise ValueError("stream must fit in 64 bits")

    def generator(self) -> np.random.Generator:
        # Philox takes a 128-bit key directly; (stream << 64) | seed gives
        # distinct, independent streams without touching a SeedSequence.
        key = (self.stream << 64) | self.seed
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, k: int) -> "RngSpec":
        return RngSpec(self.seed, k)


def as_generator(rng) -> np.random.Generator:
    """Accept an RngSpec or an already-built Generator."""
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngSpec or numpy Generator, got {type(rng)!r}")
