"""Teaching a Bayesian human whose learning strategy is uncertain.

The human is modeled as a Bayesian learner over targets whose
interpretation of robot actions is parameterized by a learning
strategy. The robot predicts the human's next belief under its own
strategy belief, picks actions greedily (or actively, trading teaching
progress against strategy information), and can infer the strategy from
the human's observed belief trajectory.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from .belief import (
    Belief,
    BeliefError,
    bayes_update,
    entropy,
    from_weights,
    kl_divergence,
    point_mass,
)

LearningModel = Callable[[Any, Any, Any, Any], float]

DEFAULT_KL_SCALE = 20.0


@dataclass(frozen=True)
class HumanState:
    """The human's current belief over targets; feedback reveals it exactly."""
    belief: Belief


def human_update(state: HumanState, context: Any, action: Any,
                 model: LearningModel, strategy: Any) -> HumanState:
    """One Bayesian step of the simulated human under its true strategy."""
    posterior = bayes_update(
        state.belief, lambda target: model(context, action, target, strategy))
    return HumanState(posterior)


def predict_state(state: HumanState, context: Any, action: Any,
                  model: LearningModel, strategy_belief: Belief) -> HumanState:
    """Strategy-belief mixture of per-strategy normalized human updates."""
    n = len(state.belief.grid)
    mixed = [0.0] * n
    for strategy, weight in zip(strategy_belief.grid.points, strategy_belief.mass):
        if weight <= 0.0:
            continue
        per = human_update(state, context, action, model, strategy).belief
        for i in range(n):
            mixed[i] += weight * per.mass[i]
    return HumanState(from_weights(state.belief.grid, mixed))


def strategy_update(strategy_belief: Belief, observed_prev: Belief, observed_next: Belief,
                    context: Any, action: Any, model: LearningModel,
                    kl_scale: float = DEFAULT_KL_SCALE) -> Belief:
    """Update the strategy belief from one observed human belief transition.

    Each candidate strategy predicts the human's next belief from the
    previously observed one; its likelihood is exp(-kl_scale * KL(observed
    || predicted)). A strategy whose prediction lacks support where the
    observation has mass gets likelihood zero.
    """
    if kl_scale <= 0.0:
        raise ValueError("kl_scale must be positive")
    weights = []
    for strategy, prior in zip(strategy_belief.grid.points, strategy_belief.mass):
        if prior <= 0.0:
            weights.append(0.0)
            continue
        predicted = human_update(HumanState(observed_prev), context, action, model, strategy).belief
        divergence = kl_divergence(observed_next, predicted)
        likelihood = 0.0 if math.isinf(divergence) else math.exp(-kl_scale * divergence)
        weights.append(prior * likelihood)
    return from_weights(strategy_belief.grid, weights)


def select_action_greedy(state: HumanState, context: Any, actions: Sequence[Any],
                         model: LearningModel, strategy_belief: Belief,
                         target: Any) -> Any:
    """Action maximizing the predicted mass on ``target``; ties to the lowest index."""
    if len(actions) == 0:
        raise ValueError("action set must be non-empty")
    best_action = None
    best_score = -math.inf
    for action in actions:
        predicted = predict_state(state, context, action, model, strategy_belief)
        score = predicted.belief.mass_at(target)
        if score > best_score:
            best_score = score
            best_action = action
    return best_action


def select_action_active(state: HumanState, context: Any, actions: Sequence[Any],
                         model: LearningModel, strategy_belief: Belief, target: Any,
                         explore_weight: float, kl_scale: float = DEFAULT_KL_SCALE,
                         entropy_mode: str = "expected") -> Any:
    """Greedy teaching score minus ``explore_weight`` times the expected
    post-feedback strategy-belief entropy.

    The post-feedback entropy of an action is evaluated by letting each
    candidate strategy (in turn) generate the human's response and
    re-running the strategy update against it; ``entropy_mode`` selects
    the strategy-belief expectation of those entropies (default) or the
    worst case over candidate strategies.
    """
    if explore_weight < 0.0:
        raise ValueError("explore_weight must be nonnegative")
    if entropy_mode not in ("expected", "worst_case"):
        raise ValueError(f"unknown entropy_mode: {entropy_mode!r}")
    if explore_weight == 0.0:
        return select_action_greedy(state, context, actions, model, strategy_belief, target)
    if len(actions) == 0:
        raise ValueError("action set must be non-empty")
    best_action = None
    best_score = -math.inf
    for action in actions:
        predicted = predict_state(state, context, action, model, strategy_belief)
        teach = predicted.belief.mass_at(target)
        entropies = []
        weights = []
        for strategy, weight in zip(strategy_belief.grid.points, strategy_belief.mass):
            if weight <= 0.0:
                continue
            response = human_update(state, context, action, model, strategy).belief
            try:
                updated = strategy_update(strategy_belief, state.belief, response,
                                          context, action, model, kl_scale)
            except BeliefError:
                continue
            entropies.append(entropy(updated))
            weights.append(weight)
        if not entropies:
            info_cost = entropy(strategy_belief)
        elif entropy_mode == "expected":
            info_cost = sum(w * h for w, h in zip(weights, entropies)) / sum(weights)
        else:
            info_cost = max(entropies)
        score = teach - explore_weight * info_cost
        if score > best_score:
            best_score = score
            best_action = action
    return best_action


@dataclass(frozen=True)
class FixedStrategyTeacher:
    """Teacher that plans against a single assumed learning strategy."""
    strategy: Any


@dataclass(frozen=True)
class PriorMixtureTeacher:
    """Teacher that plans against a fixed strategy prior, never updating it."""
    strategy_prior: Belief


@dataclass(frozen=True)
class AdaptiveTeacher:
    """Teacher that infers the learning strategy from feedback while teaching."""
    strategy_prior: Belief
    kl_scale: float = DEFAULT_KL_SCALE


@dataclass(frozen=True)
class ActiveTeacher:
    """Adaptive teacher that additionally seeks strategy information."""
    strategy_prior: Belief
    explore_weight: float
    kl_scale: float = DEFAULT_KL_SCALE
    entropy_mode: str = "expected"


TeacherKind = FixedStrategyTeacher | PriorMixtureTeacher | AdaptiveTeacher | ActiveTeacher


@dataclass(frozen=True)
class TeacherState:
    """A teacher kind plus its current strategy belief."""

    kind: TeacherKind
    strategy_belief: Belief

    def strategy_mass(self, strategy: Any) -> float:
        return self.strategy_belief.mass_at(strategy)


def init_teacher(kind: TeacherKind, strategy_grid=None) -> TeacherState:
    if isinstance(kind, FixedStrategyTeacher):
        if strategy_grid is None:
            raise ValueError("fixed teacher needs the strategy grid for reporting")
        return TeacherState(kind, point_mass(strategy_grid, kind.strategy))
    return TeacherState(kind, kind.strategy_prior)


def select_action(state: TeacherState, human: HumanState, context: Any,
                  actions: Sequence[Any], model: LearningModel, target: Any) -> Any:
    kind = state.kind
    if isinstance(kind, ActiveTeacher):
        return select_action_active(human, context, actions, model, state.strategy_belief,
                                    target, kind.explore_weight, kind.kl_scale,
                                    kind.entropy_mode)
    return select_action_greedy(human, context, actions, model, state.strategy_belief, target)


def observe_feedback(state: TeacherState, observed_prev: Belief, observed_next: Belief,
                     context: Any, action: Any, model: LearningModel) -> TeacherState:
    """Fold one observed human transition into the teacher's strategy belief."""
    kind = state.kind
    if isinstance(kind, (AdaptiveTeacher, ActiveTeacher)):
        updated = strategy_update(state.strategy_belief, observed_prev, observed_next,
                                  context, action, model, kind.kl_scale)
        return TeacherState(kind, updated)
    return state
