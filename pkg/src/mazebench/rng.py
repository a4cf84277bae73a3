"""Seed derivation helpers.

All randomness in the project flows through numpy's PCG64 generator seeded
via SeedSequence. SeedSequence gives us a splittable, collision-resistant
way to derive independent streams from structured keys, so every stream is
a pure function of its key tuple:

    maze:            (seed,)
    config build:    (master_seed, split_code, index, attempt)
    episode slot:    (run_seed, slot, episode_index)

The generator identity (PCG64 + SeedSequence) is part of the reproducibility
contract; changing it changes every generated maze and config set.
"""

from __future__ import annotations

import numpy as np

# Bumped if the generator family or key layout ever changes.
RNG_SCHEME = "pcg64-seedseq-v1"

SPLIT_TRAIN = 0
SPLIT_TEST = 1


def make_rng(*key: int) -> np.random.Generator:
    """Generator for the stream identified by the given key tuple."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def derive_seed(*key: int) -> int:
    """Collapse a key tuple to a single 63-bit seed (e.g. for generate_maze)."""
    words = np.random.SeedSequence(key).generate_state(2, np.uint64)
    return int(words[0] >> 1)
