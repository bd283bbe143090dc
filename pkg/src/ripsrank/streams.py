"""Deterministic random streams keyed by (master seed, work-unit key).

Every independent unit of work (a block of beta-graph samples, the SIR runs of
one seed node) draws from its own stream, so results never depend on how
units are distributed across workers.
"""

from __future__ import annotations

import numpy as np


def stream(master_seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
