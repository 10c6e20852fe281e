"""Goal-legibility world: a robot conveys its goal with trajectory segments.

Two goals (cup, plate) and six actions: direct, slightly exaggerated, or
fully exaggerated segments toward either goal. Simulated humans read the
segments with one of two learning strategies: legibility-attuned users
learn most from exaggeration, predictability-attuned users from direct
motion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .belief import Belief, HypothesisGrid, uniform
from .teaching import (
    HumanState,
    LearningModel,
    TeacherKind,
    TeacherState,
    human_update,
    init_teacher,
    observe_feedback,
    select_action,
)

LEGIBLE = "legible"            # learns best from exaggerated segments
PREDICTABLE = "predictable"    # learns best from direct, goal-directed segments
STRATEGIES = (LEGIBLE, PREDICTABLE)

STYLES = ("direct", "slight", "full")
GOALS = ("cup", "plate")

# P(action | action is toward the believed goal) for (direct, slight, full);
# the residual mass is split uniformly over the three off-goal actions.
_TOWARD_GOAL = {
    LEGIBLE: (0.1, 0.3, 0.45),
    PREDICTABLE: (0.35, 0.2, 0.15),
}


@dataclass(frozen=True)
class TrajectoryAction:
    style: str
    goal: str

    def label(self) -> str:
        return f"{self.style}_to_{self.goal}"


def all_actions(goals: tuple[str, str] = GOALS) -> tuple[TrajectoryAction, ...]:
    return tuple(TrajectoryAction(style, goal) for goal in goals for style in STYLES)


@dataclass(frozen=True)
class GoalScenario:
    """Two candidate goals, the robot's true goal, and the six actions."""

    goals: tuple[str, str] = GOALS
    target: str = "plate"
    actions: tuple[TrajectoryAction, ...] = field(default_factory=all_actions)

    def __post_init__(self) -> None:
        if len(self.goals) != 2 or len(set(self.goals)) != 2:
            raise ValueError("scenario needs exactly two distinct goals")
        if self.target not in self.goals:
            raise ValueError("target must be one of the goals")
        if len(self.actions) != 6:
            raise ValueError("scenario needs exactly six trajectory actions")

    def goal_grid(self) -> HypothesisGrid:
        return HypothesisGrid(self.goals)

    def strategy_grid(self) -> HypothesisGrid:
        return HypothesisGrid(STRATEGIES)


def action_likelihood(action: TrajectoryAction, goal: str, strategy: str) -> float:
    """Probability the human's robot model assigns to ``action`` given ``goal``."""
    if strategy not in _TOWARD_GOAL:
        raise ValueError(f"unknown learning strategy: {strategy!r}")
    if action.style not in STYLES or action.goal not in GOALS:
        raise ValueError(f"unknown action: {action!r}")
    toward = _TOWARD_GOAL[strategy]
    if action.goal == goal:
        return toward[STYLES.index(action.style)]
    return (1.0 - sum(toward)) / 3.0


def learning_model(scenario: GoalScenario) -> LearningModel:
    """Human-side robot model adapter for the teaching module."""
    def model(context: GoalScenario, action: TrajectoryAction, goal: str, strategy: str) -> float:
        return action_likelihood(action, goal, strategy)
    return model


def uniform_goal_prior(scenario: GoalScenario) -> Belief:
    return uniform(scenario.goal_grid())


@dataclass(frozen=True)
class TeachingStep:
    t: int
    action: TrajectoryAction
    target_mass: float       # human belief in the true goal after the step
    strategy_mass: float     # teacher belief in the human's true strategy


def run_teaching_episode(rng: np.random.Generator, scenario: GoalScenario,
                         human_strategy: str, teacher: TeacherKind, timesteps: int,
                         *, feedback_noise: float = 0.0) -> list[TeachingStep]:
    """Simulate one teaching episode against a Bayesian human.

    Per round: the robot picks a segment under its current strategy
    belief, the human performs a Bayesian update with its true strategy,
    and the robot observes the human's belief (optionally smoothed
    toward uniform by ``feedback_noise``) before updating its own
    strategy belief. The rng only matters when feedback noise is on;
    the noiseless protocol is deterministic.
    """
    if timesteps < 1:
        raise ValueError("an episode needs at least one timestep")
    if not 0.0 <= feedback_noise < 1.0:
        raise ValueError("feedback_noise must lie in [0, 1)")
    if human_strategy not in STRATEGIES:
        raise ValueError(f"unknown learning strategy: {human_strategy!r}")
    model = learning_model(scenario)
    human = HumanState(uniform_goal_prior(scenario))
    state: TeacherState = init_teacher(teacher, scenario.strategy_grid())
    observed_prev = _observed(human.belief, feedback_noise, rng)
    steps = []
    for t in range(1, timesteps + 1):
        action = select_action(state, HumanState(observed_prev), scenario,
                               scenario.actions, model, scenario.target)
        human = human_update(human, scenario, action, model, human_strategy)
        observed_next = _observed(human.belief, feedback_noise, rng)
        state = observe_feedback(state, observed_prev, observed_next, scenario, action, model)
        steps.append(TeachingStep(t, action,
                                  human.belief.mass_at(scenario.target),
                                  state.strategy_mass(human_strategy)))
        observed_prev = observed_next
    return steps


def _observed(belief: Belief, noise: float, rng: np.random.Generator) -> Belief:
    if noise == 0.0:
        return belief
    n = len(belief.grid)
    jitter = rng.dirichlet(np.ones(n))
    mass = tuple((1.0 - noise) * m + noise * float(j) for m, j in zip(belief.mass, jitter))
    return Belief(belief.grid, mass)
