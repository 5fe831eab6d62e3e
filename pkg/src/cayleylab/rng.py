"""Deterministic substream derivation for reproducible Monte Carlo.

Every random procedure in the package draws from a Philox (counter-based)
generator keyed by ``(master_seed, *path)``. Substreams depend only on their
key, never on execution order, so trial t of a run is the same whether trials
run sequentially, out of order, or on separate workers.
"""
from __future__ import annotations

import numpy as np


def substream_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the substream identified by (master_seed, *path)."""
    seq = np.random.SeedSequence((int(master_seed),) + tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(seq))
