"""Learning from a teacher whose teaching strategy is uncertain.

Three observation models over a pluggable teacher model: a fixed
strategy estimate, a static mixture under a strategy prior, and joint
inference over (target, strategy). The teacher model is any callable
``model(context, action, target, strategy) -> probability`` that
normalizes over the finite action set for fixed (context, target,
strategy).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from .belief import Belief, HypothesisGrid, bayes_update, from_weights, marginalize, product_grid, uniform

TeachingModel = Callable[[Any, Any, Any, Any], float]


def observe_fixed(belief: Belief, context: Any, action: Any,
                  model: TeachingModel, strategy: Any) -> Belief:
    """Bayes update of the target belief assuming one fixed teaching strategy."""
    return bayes_update(belief, lambda target: model(context, action, target, strategy))


def observe_prior_mixture(belief: Belief, context: Any, action: Any,
                          model: TeachingModel, strategy_prior: Belief) -> Belief:
    """Bayes update with the strategy-prior mixture likelihood.

    The strategy prior is never updated between observations; it only
    mixes the per-strategy likelihoods.
    """
    def likelihood(target: Any) -> float:
        return sum(w * model(context, action, target, s)
                   for s, w in zip(strategy_prior.grid.points, strategy_prior.mass))
    return bayes_update(belief, likelihood)


def observe_joint(joint: Belief, context: Any, action: Any,
                  model: TeachingModel) -> Belief:
    """Pointwise Bayes update of a joint (target, strategy) belief."""
    weights = [m * model(context, action, target, strategy)
               for (target, strategy), m in zip(joint.grid.points, joint.mass)]
    return from_weights(joint.grid, weights)


@dataclass(frozen=True)
class FixedStrategy:
    """Learner that assumes every teacher uses ``strategy``."""
    strategy: Any


@dataclass(frozen=True)
class PriorMixture:
    """Learner that mixes strategies under a fixed prior."""
    strategy_prior: Belief


@dataclass(frozen=True)
class JointLearner:
    """Learner that infers the strategy jointly with the target."""
    strategy_prior: Belief


LearnerKind = FixedStrategy | PriorMixture | JointLearner


@dataclass(frozen=True)
class LearnerState:
    """A learner kind plus its current working belief.

    For fixed and mixture learners the working belief ranges over
    targets; for the joint learner it ranges over (target, strategy)
    pairs and the target marginal is recovered on demand.
    """

    kind: LearnerKind
    belief: Belief

    def target_belief(self) -> Belief:
        if isinstance(self.kind, JointLearner):
            return marginalize(self.belief, axis=0)
        return self.belief


def init_learner(kind: LearnerKind, target_grid: HypothesisGrid,
                 target_prior: Belief | None = None) -> LearnerState:
    """Fresh learner state; the joint learner starts from the independent product prior."""
    prior = target_prior if target_prior is not None else uniform(target_grid)
    if isinstance(kind, JointLearner):
        sp = kind.strategy_prior
        joint_grid = product_grid(target_grid.points, sp.grid.points)
        mass = tuple(tm * sm for tm in prior.mass for sm in sp.mass)
        return LearnerState(kind, Belief(joint_grid, mass))
    return LearnerState(kind, prior)


def observe(state: LearnerState, context: Any, action: Any,
            model: TeachingModel) -> LearnerState:
    """Advance a learner state by one observed teacher action."""
    kind = state.kind
    if isinstance(kind, FixedStrategy):
        updated = observe_fixed(state.belief, context, action, model, kind.strategy)
    elif isinstance(kind, PriorMixture):
        updated = observe_prior_mixture(state.belief, context, action, model, kind.strategy_prior)
    elif isinstance(kind, JointLearner):
        updated = observe_joint(state.belief, context, action, model)
    else:
        raise TypeError(f"unknown learner kind: {kind!r}")
    return LearnerState(kind, updated)
