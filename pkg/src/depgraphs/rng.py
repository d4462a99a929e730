"""Seeding scheme shared by samplers and the experiment harness.

Every sample is drawn from a counter-based generator (Philox) keyed by a
64-bit seed, so a (model, seed) pair names one graph forever.  Trial seeds
are derived from the master seed by a fixed splitmix64 chain over
(grid index, trial index), which makes experiment output independent of
worker count and scheduling.
"""

from __future__ import annotations

import os

import numpy as np

MASK64 = (1 << 64) - 1

SEED_ENV = "DEPGRAPHS_SEED"


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixing function (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *indices: int) -> int:
    """Deterministic 64-bit seed for a nested index path under a master seed.

    Chaining through splitmix64 keeps (1,0) and (0,1) paths distinct; this
    is the documented mixing function behind reproducible parallel trials.
    """
    h = splitmix64(master & MASK64)
    for ix in indices:
        h = splitmix64(h ^ ((ix & MASK64) * 0xD1B54A32D192ED03 & MASK64))
    return h


def generator(seed: int) -> np.random.Generator:
    """Counter-based generator for one sample; cheap to create per trial."""
    return np.random.Generator(np.random.Philox(key=seed & MASK64))


def default_seed() -> int:
    """Seed from the environment, or 0 when unset."""
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None
