"""Finite-support probability distributions with Bayesian updates.

Every belief in the lab -- over classifier boundaries, interaction
strategies, or (target, strategy) pairs -- is a normalized mass vector
over a finite hypothesis grid. Beliefs are immutable values; all
operations return new beliefs and never touch their inputs.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

MASS_TOL = 1e-9        # allowed deviation of a mass vector from summing to 1
ZERO_MASS = 1e-12      # total unnormalized mass below this is treated as contradiction


class BeliefError(ValueError):
    """Raised for invalid grids, invalid mass vectors, or contradictory evidence."""


@dataclass(frozen=True)
class HypothesisGrid:
    """Ordered, distinct hypothesis values supporting a belief."""

    points: tuple[Any, ...]

    def __post_init__(self) -> None:
        if len(self.points) == 0:
            raise BeliefError("hypothesis grid must be non-empty")
        if len(set(self.points)) != len(self.points):
            raise BeliefError("hypothesis grid points must be distinct")

    def __len__(self) -> int:
        return len(self.points)

    def index(self, hypothesis: Any) -> int:
        try:
            return self.points.index(hypothesis)
        except ValueError:
            raise BeliefError(f"hypothesis {hypothesis!r} not on grid") from None


def grid(points: Sequence[Any]) -> HypothesisGrid:
    return HypothesisGrid(tuple(points))


def product_grid(first: Sequence[Any], second: Sequence[Any]) -> HypothesisGrid:
    """Cartesian product grid of pairs, row-major in the first factor."""
    return HypothesisGrid(tuple((a, b) for a in first for b in second))


@dataclass(frozen=True)
class Belief:
    """Probability mass aligned with a hypothesis grid."""

    grid: HypothesisGrid
    mass: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.mass) != len(self.grid):
            raise BeliefError("mass length must match grid length")
        total = 0.0
        for m in self.mass:
            if m < -MASS_TOL:
                raise BeliefError(f"negative probability mass {m}")
            total += m
        if abs(total - 1.0) > MASS_TOL:
            raise BeliefError(f"mass sums to {total}, expected 1")

    def mass_at(self, hypothesis: Any) -> float:
        return self.mass[self.grid.index(hypothesis)]

    def to_json(self) -> dict:
        return {"points": list(self.grid.points), "mass": list(self.mass)}


def uniform(grid: HypothesisGrid) -> Belief:
    p = 1.0 / len(grid)
    return Belief(grid, (p,) * len(grid))


def point_mass(grid: HypothesisGrid, hypothesis: Any) -> Belief:
    i = grid.index(hypothesis)
    mass = [0.0] * len(grid)
    mass[i] = 1.0
    return Belief(grid, tuple(mass))


def from_weights(grid: HypothesisGrid, weights: Sequence[float]) -> Belief:
    """Normalize nonnegative weights into a belief.

    Total weight below ``ZERO_MASS`` signals contradictory evidence and
    raises rather than silently resetting to uniform.
    """
    if len(weights) != len(grid):
        raise BeliefError("weights length must match grid length")
    total = 0.0
    for w in weights:
        if w < 0.0:
            raise BeliefError(f"negative weight {w}")
        total += w
    if total < ZERO_MASS:
        raise BeliefError("all hypotheses have (near-)zero mass: contradictory evidence")
    return Belief(grid, tuple(w / total for w in weights))


def bayes_update(belief: Belief, likelihood: Callable[[Any], float]) -> Belief:
    """Posterior mass proportional to prior mass times likelihood."""
    weights = [m * likelihood(h) for h, m in zip(belief.grid.points, belief.mass)]
    return from_weights(belief.grid, weights)


def _product_axes(joint: Belief) -> tuple[list[Any], list[Any], dict[tuple[Any, Any], int]]:
    """Recover the factor axes of a product grid, or raise if not a product."""
    firsts: list[Any] = []
    seconds: list[Any] = []
    for p in joint.grid.points:
        if not (isinstance(p, tuple) and len(p) == 2):
            raise BeliefError("joint belief requires a grid of pairs")
        a, b = p
        if a not in firsts:
            firsts.append(a)
        if b not in seconds:
            seconds.append(b)
    if len(firsts) * len(seconds) != len(joint.grid):
        raise BeliefError("grid is not a full cartesian product")
    index = {p: i for i, p in enumerate(joint.grid.points)}
    for a in firsts:
        for b in seconds:
            if (a, b) not in index:
                raise BeliefError("grid is not a full cartesian product")
    return firsts, seconds, index


def marginalize(joint: Belief, axis: int) -> Belief:
    """Marginal over the kept ``axis`` (0 for the first factor, 1 for the second)."""
    if axis not in (0, 1):
        raise BeliefError("axis must be 0 or 1")
    firsts, seconds, index = _product_axes(joint)
    kept, dropped = (firsts, seconds) if axis == 0 else (seconds, firsts)
    mass = []
    for k in kept:
        total = 0.0
        for d in dropped:
            pair = (k, d) if axis == 0 else (d, k)
            total += joint.mass[index[pair]]
        mass.append(total)
    return Belief(HypothesisGrid(tuple(kept)), tuple(mass))


def conditional(joint: Belief, given: Any, axis: int = 0) -> Belief:
    """Belief over the other factor, conditioned on ``given`` along ``axis``."""
    if axis not in (0, 1):
        raise BeliefError("axis must be 0 or 1")
    firsts, seconds, index = _product_axes(joint)
    anchor, other = (firsts, seconds) if axis == 0 else (seconds, firsts)
    if given not in anchor:
        raise BeliefError(f"hypothesis {given!r} not on the conditioning axis")
    weights = []
    for o in other:
        pair = (given, o) if axis == 0 else (o, given)
        weights.append(joint.mass[index[pair]])
    if sum(weights) < ZERO_MASS:
        raise BeliefError(f"conditioning slice at {given!r} has zero mass")
    return from_weights(HypothesisGrid(tuple(other)), weights)


def entropy(belief: Belief) -> float:
    """Shannon entropy in nats, with 0*log(0) = 0."""
    h = 0.0
    for m in belief.mass:
        if m > 0.0:
            h -= m * math.log(m)
    return max(h, 0.0)


def mean(belief: Belief) -> Any:
    """Mass-weighted mean of numeric (scalar or same-length vector) hypotheses."""
    points = belief.grid.points
    if all(isinstance(p, (int, float)) for p in points):
        return sum(m * p for p, m in zip(points, belief.mass))
    if all(isinstance(p, (tuple, list)) for p in points):
        dims = {len(p) for p in points}
        if len(dims) == 1:
            dim = dims.pop()
            out = [0.0] * dim
            for p, m in zip(points, belief.mass):
                for i in range(dim):
                    out[i] += m * float(p[i])
            return tuple(out)
    raise BeliefError("mean requires numeric scalar or fixed-length vector hypotheses")


def kl_divergence(p: Belief, q: Belief) -> float:
    """KL(p || q) in nats on a shared grid; infinite where q lacks support of p."""
    if p.grid.points != q.grid.points:
        raise BeliefError("KL divergence requires identical grids")
    total = 0.0
    for pm, qm in zip(p.mass, q.mass):
        if pm <= 0.0:
            continue
        if qm <= 0.0:
            return math.inf
        total += pm * math.log(pm / qm)
    return max(total, 0.0)
