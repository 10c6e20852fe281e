"""Simulated demonstrators: biased Boltzmann policies over gridworlds.

A demonstrator labels every state with an action. Action preference
combines the optimal Q-value with a bias toward locally higher (or
lower) next-state reward, sharpened by a rationality factor; an optional
noise ratio replaces labels with uniformly random actions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gridworld import Gridworld, ValuePlan, value_iteration


@dataclass(frozen=True, eq=False)
class DemonstratorParams:
    """True reward weights plus the demonstrator's style parameters."""

    weights: np.ndarray       # true reward weights, one per feature
    bias: float               # in [-1, 1]; +1 favors high-reward next states
    rationality: float        # softmax sharpness; 0 is uniformly random
    noise_ratio: float = 0.0  # chance a state's label is uniformly random

    def __post_init__(self) -> None:
        w = np.ascontiguousarray(np.asarray(self.weights, dtype=np.float64))
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if not -1.0 <= self.bias <= 1.0:
            raise ValueError("bias must lie in [-1, 1]")
        if self.rationality <= 0.0:
            raise ValueError("rationality must be positive")
        if not 0.0 <= self.noise_ratio <= 1.0:
            raise ValueError("noise_ratio must lie in [0, 1]")


def action_distribution(world: Gridworld, weights: np.ndarray, bias: float,
                        rationality: float, plan: ValuePlan | None = None) -> np.ndarray:
    """(states, 4) demonstration probabilities for one reward hypothesis."""
    if plan is None:
        plan = value_iteration(world, weights)
    rewards = world.rewards(weights)
    shaping = bias * (rewards[world.next_state] - rewards[:, None])
    logits = rationality * (plan.q_values + shaping)
    logits -= logits.max(axis=1, keepdims=True)
    probs = np.exp(logits)
    probs /= probs.sum(axis=1, keepdims=True)
    return probs


def demo_likelihood(world: Gridworld, weights: np.ndarray, bias: float,
                    rationality: float, state: int, action: int,
                    plan: ValuePlan | None = None) -> float:
    """Probability of one (state, action) label under the demonstration model."""
    probs = action_distribution(world, weights, bias, rationality, plan)
    return float(probs[state, action])


def generate_demonstration(rng: np.random.Generator, world: Gridworld,
                           params: DemonstratorParams) -> np.ndarray:
    """Label every state independently; with probability ``noise_ratio`` a
    state's label is uniformly random instead of model-drawn."""
    probs = action_distribution(world, params.weights, params.bias, params.rationality)
    n = world.n_states
    draws = rng.random(n)
    cumulative = np.cumsum(probs, axis=1)
    actions = np.empty(n, dtype=np.int64)
    for s in range(n):
        actions[s] = int(np.searchsorted(cumulative[s], draws[s], side="right"))
    actions = np.minimum(actions, 3)
    noisy = rng.random(n) < params.noise_ratio
    random_actions = rng.integers(0, 4, size=n)
    actions[noisy] = random_actions[noisy]
    return actions
