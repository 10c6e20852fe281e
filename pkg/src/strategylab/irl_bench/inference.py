"""Posterior inference over reward weights and demonstration bias.

A Metropolis random-walk over the [-1, 1] box (uniform prior) with
single-coordinate scans against the exact demonstration likelihood.
Fixed-bias learners clamp the bias coordinate; the joint learner samples
it. All randomness is pre-drawn from the caller's generator, and chains
for different learners on the same generator state propose identical
weight moves, which couples their estimates user by user.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .gridworld import Gridworld


@dataclass(frozen=True)
class MHSettings:
    """Sampler configuration; the defaults are the benchmark's fixed budget."""

    samples: int = 4000        # recorded draws, one per full coordinate scan
    burn_in: int = 1000        # annealed scans before recording starts
    step: float = 0.1          # per-coordinate Gaussian proposal scale
    value_tol: float = 1e-6    # Bellman-residual level for in-chain solves
    random_starts: int = 256   # prior draws scored when picking the start
    descend_top: int = 8       # best starts refined by coordinate descent
    anneal_floor: float = 0.05
    anneal_cycles: int = 3

    def __post_init__(self) -> None:
        if self.samples < 1 or self.burn_in < 1:
            raise ValueError("samples and burn_in must be positive")
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if not 0.0 < self.anneal_floor <= 1.0:
            raise ValueError("anneal_floor must lie in (0, 1]")


@dataclass(frozen=True, eq=False)
class JointPosterior:
    """Equally weighted posterior samples and their means."""

    weight_samples: np.ndarray   # (samples, n_features)
    bias_samples: np.ndarray     # (samples,); constant when the bias was fixed
    weights_mean: np.ndarray     # posterior mean reward weights
    bias_mean: float             # posterior mean bias
    bias_fixed: bool             # True for fixed-bias learners
    acceptance_rate: float

    @property
    def sample_weights(self) -> np.ndarray:
        n = self.weight_samples.shape[0]
        return np.full(n, 1.0 / n)


def infer_posterior(world: Gridworld, demonstration: np.ndarray, rationality: float,
                    rng: np.random.Generator, fixed_bias: float | None = None,
                    settings: MHSettings = MHSettings()) -> JointPosterior:
    """Run one chain and return its post-burn-in samples and means.

    ``fixed_bias=None`` samples the bias jointly with the weights;
    otherwise the bias is clamped (the three fixed learners). The chain
    start is chosen by scoring random prior draws plus logit-regression
    candidates and coordinate-descending from the best few; burn-in
    anneals the likelihood over a few heat cycles and the sampling phase
    restarts from the best point visited.
    """
    actions = np.ascontiguousarray(np.asarray(demonstration, dtype=np.int64))
    if actions.shape != (world.n_states,):
        raise ValueError("demonstration must label every state exactly once")
    if actions.min() < 0 or actions.max() > 3:
        raise ValueError("demonstration actions must index the four moves")
    if rationality <= 0.0:
        raise ValueError("rationality must be positive")
    sample_bias = fixed_bias is None
    if not sample_bias and not -1.0 <= fixed_bias <= 1.0:
        raise ValueError("fixed bias must lie in [-1, 1]")

    n_feat = world.n_features
    total = settings.samples + settings.burn_in
    stride = n_feat + 1
    # one noise block regardless of learner kind, so chains stay aligned
    normals = rng.normal(0.0, settings.step, size=(total, stride))
    uniforms = rng.random(total * stride)
    random_weights = rng.uniform(-1.0, 1.0, size=(settings.random_starts, n_feat))
    random_biases = rng.uniform(-1.0, 1.0, size=settings.random_starts)

    samples_out = np.empty((settings.samples, n_feat))
    biases_out = np.empty(settings.samples)
    acceptance = kernels.mh_chain(
        world.features, world.next_state, world.discount, actions, rationality,
        random_weights, random_biases,
        0.0 if sample_bias else float(fixed_bias), sample_bias,
        normals, uniforms, settings.burn_in, settings.value_tol,
        min(settings.descend_top, settings.random_starts), settings.anneal_floor,
        settings.anneal_cycles, samples_out, biases_out)

    if not np.all(np.isfinite(samples_out)) or not np.all(np.isfinite(biases_out)):
        raise FloatingPointError("posterior sampling produced non-finite states")
    return JointPosterior(
        weight_samples=samples_out,
        bias_samples=biases_out,
        weights_mean=samples_out.mean(axis=0),
        bias_mean=float(biases_out.mean()),
        bias_fixed=not sample_bias,
        acceptance_rate=float(acceptance),
    )
