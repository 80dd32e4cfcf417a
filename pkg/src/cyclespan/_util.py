"""Shared helpers: deterministic seed splitting and tunable constants."""

from __future__ import annotations

import numpy as np

# Hitting-sample oversampling constant: sample size 3*(U/x)*ln n drives the
# per-vertex miss probability below n^-3 at desk scale.
HITTING_CONSTANT = 3

# Rounds multiplier for the 1-fault-tolerant spanner transform.
FAULT_ROUNDS_CONSTANT = 8


def child_seed(seed: int, *tags: int) -> int:
    """Deterministically derive an independent child seed."""
    ss = np.random.SeedSequence(entropy=int(seed) & (2**63 - 1), spawn_key=tuple(int(t) for t in tags))
    return int(ss.generate_state(1, dtype=np.uint64)[0] & (2**63 - 1))


def rng_from(seed: int, *tags: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(
        entropy=int(seed) & (2**63 - 1), spawn_key=tuple(int(t) for t in tags)))
