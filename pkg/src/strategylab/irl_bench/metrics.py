"""Benchmark metrics: reward error, strategy error, and policy loss."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demos import DemonstratorParams
from .gridworld import Gridworld, policy_values, value_iteration
from .inference import JointPosterior


@dataclass(frozen=True)
class BenchmarkMetrics:
    reward_error: float            # L1 distance of mean weights to the truth
    strategy_error: float | None   # |mean bias - true bias|; None when bias was fixed
    policy_loss: float             # mean over start states of value forgone


def compute_metrics(posterior: JointPosterior, world: Gridworld,
                    params: DemonstratorParams) -> BenchmarkMetrics:
    """Score one learner's posterior against the demonstrator's truth.

    Policy loss evaluates the greedy policy for the estimated weights
    under the true reward, averaged over all start states; it is zero
    whenever the estimated and true optimal policies coincide.
    """
    reward_error = float(np.abs(params.weights - posterior.weights_mean).sum())
    strategy_error = None if posterior.bias_fixed else float(abs(params.bias - posterior.bias_mean))
    true_plan = value_iteration(world, params.weights)
    learned_policy = value_iteration(world, posterior.weights_mean).policy
    optimal_values = policy_values(world, true_plan.policy, params.weights)
    learned_values = policy_values(world, learned_policy, params.weights)
    policy_loss = float(np.mean(optimal_values - learned_values))
    return BenchmarkMetrics(reward_error=reward_error,
                            strategy_error=strategy_error,
                            policy_loss=max(policy_loss, 0.0))
