"""Deterministic gridworld MDPs with linear state rewards.

States carry binary feature vectors; the reward is the dot product of a
weight vector with the state features. The four cardinal moves are
deterministic and off-grid moves leave the state unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels

ACTIONS = ("up", "down", "left", "right")
DEFAULT_DISCOUNT = 0.9
VALUE_TOL = 1e-6


def next_state_table(width: int, height: int) -> np.ndarray:
    """(states, 4) successor indices; border moves are self-transitions."""
    n = width * height
    table = np.zeros((n, 4), dtype=np.int64)
    for s in range(n):
        x, y = s % width, s // width
        table[s, 0] = s - width if y > 0 else s
        table[s, 1] = s + width if y < height - 1 else s
        table[s, 2] = s - 1 if x > 0 else s
        table[s, 3] = s + 1 if x < width - 1 else s
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class Gridworld:
    width: int
    height: int
    features: np.ndarray          # (states, n_features) of 0/1 floats
    discount: float = DEFAULT_DISCOUNT

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        feats = np.ascontiguousarray(np.asarray(self.features, dtype=np.float64))
        if feats.shape[0] != self.n_states or feats.ndim != 2:
            raise ValueError("features must have one row per state")
        if not 0.0 < self.discount < 1.0:
            raise ValueError("discount must lie in (0, 1)")
        feats.setflags(write=False)
        object.__setattr__(self, "features", feats)

    @property
    def n_states(self) -> int:
        return self.width * self.height

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @cached_property
    def next_state(self) -> np.ndarray:
        return next_state_table(self.width, self.height)

    def rewards(self, weights: np.ndarray) -> np.ndarray:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (self.n_features,):
            raise ValueError("weight vector length must match the feature count")
        return self.features @ w

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "discount": self.discount,
            "features": self.features.astype(int).tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Gridworld":
        return cls(width=int(data["width"]), height=int(data["height"]),
                   features=np.asarray(data["features"], dtype=np.float64),
                   discount=float(data.get("discount", DEFAULT_DISCOUNT)))


@dataclass(frozen=True, eq=False)
class ValuePlan:
    """Optimal values, action values, and the greedy policy for one reward."""

    values: np.ndarray      # (states,)
    q_values: np.ndarray    # (states, 4); reward on the current state plus
                            # discounted optimal next-state value
    policy: np.ndarray      # (states,) argmax actions, lowest index on ties


def value_iteration(world: Gridworld, weights: np.ndarray, tol: float = VALUE_TOL) -> ValuePlan:
    """Solve the Bellman optimality equation to within ``tol`` sup-norm.

    Sweeps stop once a full sweep changes no state by more than
    ``tol * (1 - discount) / discount``, which bounds both the distance
    to the fixed point and the Bellman residual by ``tol``.
    """
    rewards = world.rewards(weights)
    values = np.zeros(world.n_states)
    delta_stop = tol * (1.0 - world.discount) / world.discount
    kernels.vi_sweeps(rewards, world.next_state, world.discount, values,
                      delta_stop, 10_000_000)
    q_values = rewards[:, None] + world.discount * values[world.next_state]
    policy = np.argmax(q_values, axis=1)
    return ValuePlan(values=values, q_values=q_values, policy=policy)


def policy_values(world: Gridworld, policy: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Exact policy evaluation via a direct linear solve."""
    rewards = world.rewards(weights)
    n = world.n_states
    successors = world.next_state[np.arange(n), policy]
    system = np.eye(n)
    for s in range(n):
        system[s, successors[s]] -= world.discount
    return np.linalg.solve(system, rewards)


def random_world(rng: np.random.Generator, n_features: int,
                 width: int = 8, height: int = 8,
                 discount: float = DEFAULT_DISCOUNT) -> Gridworld:
    """Fair-coin binary features per state, redrawn while any feature
    column is constant (a constant column makes its weight unidentifiable)."""
    n = width * height
    if n < 2:
        raise ValueError("random worlds need at least two states")
    while True:
        feats = rng.integers(0, 2, size=(n, n_features)).astype(np.float64)
        if not np.any(feats.min(axis=0) == feats.max(axis=0)):
            return Gridworld(width, height, feats, discount)
