"""Deterministic stream splitting for simulated populations.

Every random stream in an experiment derives from the master seed via
``SeedSequence(entropy=master, spawn_key=(condition, user, stream))``.
Streams are therefore independent, reproducible from the master seed
alone, and unaffected by worker counts or scheduling order.
"""

from __future__ import annotations

import numpy as np

PARAMS_STREAM = 0     # world generation and user parameter draws
EPISODE_STREAM = 1    # episode observations / posterior chains


def stream_seed(master: int, condition: int, user: int, stream: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=master, spawn_key=(condition, user, stream))


def stream_rng(master: int, condition: int, user: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(stream_seed(master, condition, user, stream))
