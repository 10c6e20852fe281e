"""Screw-sorting world: a teacher indicates short screws, the robot sorts.

The target is an integer length boundary (screws with length <= boundary
are short). Simulated teachers use one of two strategies: noisily
indicating the short screw nearest the boundary, or picking a short
screw uniformly at random (with a small chance of indicating a long
screw either way).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .belief import Belief, HypothesisGrid, uniform
from .learning import LearnerKind, LearnerState, TeachingModel, init_learner, observe

NEAR_BOUNDARY = "near_boundary"      # weight exp(-|boundary - u| / 2)
UNIFORM_SHORT = "uniform_short"      # weight 0.9 for short screws, 0.1 for long
STRATEGIES = (NEAR_BOUNDARY, UNIFORM_SHORT)

CLASSIFY_TIE_TOL = 1e-9


@dataclass(frozen=True)
class SortingTask:
    """Ten distinct screw lengths and the true short/long boundary."""

    lengths: tuple[int, ...]
    boundary: int

    def __post_init__(self) -> None:
        if len(self.lengths) != 10:
            raise ValueError("a sorting task has exactly 10 screws")
        if len(set(self.lengths)) != len(self.lengths):
            raise ValueError("screw lengths must be distinct")
        shorts = sum(1 for l in self.lengths if l <= self.boundary)
        if shorts == 0 or shorts == len(self.lengths):
            raise ValueError("boundary must leave at least one short and one long screw")

    def true_labels(self) -> tuple[bool, ...]:
        return tuple(l <= self.boundary for l in self.lengths)


def default_task(boundary: int) -> SortingTask:
    return SortingTask(tuple(range(1, 11)), boundary)


def boundary_grid(lengths: tuple[int, ...]) -> HypothesisGrid:
    """Candidate boundaries: every length that keeps both classes non-empty."""
    ordered = tuple(sorted(lengths))
    return HypothesisGrid(ordered[:-1])


@lru_cache(maxsize=4096)
def _weight_table(lengths: tuple[int, ...], boundary: int, strategy: str,
                  full_support: bool) -> tuple[float, ...]:
    """Normalized indication probabilities over the screws for one (boundary, strategy)."""
    if strategy == NEAR_BOUNDARY:
        weights = [math.exp(-0.5 * abs(boundary - l)) for l in lengths]
        if not full_support:
            weights = [w if l <= boundary else 0.0 for w, l in zip(weights, lengths)]
    elif strategy == UNIFORM_SHORT:
        weights = [0.9 if l <= boundary else 0.1 for l in lengths]
    else:
        raise ValueError(f"unknown teaching strategy: {strategy!r}")
    total = sum(weights)
    return tuple(w / total for w in weights)


def teacher_likelihood(task: SortingTask, indicated: int, boundary: int, strategy: str,
                       *, full_support: bool = True) -> float:
    """Probability that a teacher with ``strategy`` indicates screw ``indicated``."""
    if indicated not in task.lengths:
        raise ValueError(f"screw of length {indicated} is not in the task")
    table = _weight_table(task.lengths, boundary, strategy, full_support)
    return table[task.lengths.index(indicated)]


def teaching_model(task: SortingTask, *, full_support: bool = True) -> TeachingModel:
    """Teacher model adapter for the learning module (context is the task itself)."""
    def model(context: SortingTask, action: int, boundary: int, strategy: str) -> float:
        table = _weight_table(context.lengths, boundary, strategy, full_support)
        return table[context.lengths.index(action)]
    return model


def sample_teacher_action(rng: np.random.Generator, task: SortingTask, strategy: str,
                          *, full_support: bool = True) -> int:
    """Draw one indicated screw from the teacher's distribution at the true boundary."""
    table = _weight_table(task.lengths, task.boundary, strategy, full_support)
    cumulative = np.cumsum(table)
    draw = rng.random()
    index = int(np.searchsorted(cumulative, draw, side="right"))
    return task.lengths[min(index, len(task.lengths) - 1)]


def classify(belief: Belief, task: SortingTask) -> tuple[tuple[bool, ...], float]:
    """Belief-optimal labels (True = short) and the expected number correct.

    A screw is labeled short iff P(length <= boundary) > 0.5; exact ties
    (within ``CLASSIFY_TIE_TOL``) go to long.
    """
    short_prob = {}
    for l in task.lengths:
        short_prob[l] = sum(m for b, m in zip(belief.grid.points, belief.mass) if b >= l)
    labels = []
    expected = 0.0
    for l in task.lengths:
        p = short_prob[l]
        short = p > 0.5 + CLASSIFY_TIE_TOL
        labels.append(short)
        expected += p if short else 1.0 - p
    return tuple(labels), expected


def count_errors(labels: tuple[bool, ...], task: SortingTask) -> int:
    return sum(1 for got, want in zip(labels, task.true_labels()) if got != want)


@dataclass(frozen=True)
class EpisodeStep:
    t: int
    indicated: int
    errors: int


def run_episode_stream(rng: np.random.Generator, task: SortingTask, teacher_strategy: str,
                       learner: LearnerKind, timesteps: int,
                       *, full_support: bool = True) -> list[EpisodeStep]:
    """Simulate one user teaching one learner for ``timesteps`` rounds.

    Each round the teacher indicates a screw, the learner updates its
    belief, and the robot sorts all ten screws; errors are counted
    against the true boundary. The observation stream depends only on
    the rng and the teacher, so identically seeded runs feed identical
    streams to every learner kind.
    """
    if timesteps < 1:
        raise ValueError("an episode needs at least one timestep")
    model = teaching_model(task, full_support=full_support)
    grid = boundary_grid(task.lengths)
    state: LearnerState = init_learner(learner, grid)
    steps = []
    for t in range(1, timesteps + 1):
        indicated = sample_teacher_action(rng, task, teacher_strategy, full_support=full_support)
        state = observe(state, task, indicated, model)
        labels, _ = classify(state.target_belief(), task)
        steps.append(EpisodeStep(t, indicated, count_errors(labels, task)))
    return steps


def uniform_boundary_prior(task: SortingTask) -> Belief:
    return uniform(boundary_grid(task.lengths))
