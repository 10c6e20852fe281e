"""Gridworld inverse-reinforcement-learning benchmark."""

from .demos import DemonstratorParams, action_distribution, demo_likelihood, generate_demonstration
from .gridworld import (
    ACTIONS,
    Gridworld,
    ValuePlan,
    next_state_table,
    policy_values,
    random_world,
    value_iteration,
)
from .inference import JointPosterior, MHSettings, infer_posterior
from .metrics import BenchmarkMetrics, compute_metrics

__all__ = [
    "ACTIONS",
    "BenchmarkMetrics",
    "DemonstratorParams",
    "Gridworld",
    "JointPosterior",
    "MHSettings",
    "ValuePlan",
    "action_distribution",
    "compute_metrics",
    "demo_likelihood",
    "generate_demonstration",
    "infer_posterior",
    "next_state_table",
    "policy_values",
    "random_world",
    "value_iteration",
]
