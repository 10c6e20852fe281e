"""Experiment configuration: a YAML file of nested key/value settings.

One config fully determines an experiment run, including every seed; the
grammar is plain YAML with the keys documented in the README and
validated here.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .. import goal_world, sorting_world

EXPERIMENTS = ("sorting", "goal_teaching", "irl", "irl_noise")

SORTING_LEARNERS = ("oracle", "fixed_near_boundary", "fixed_uniform_short",
                    "prior_mixture", "joint")
GOAL_TEACHERS = ("oracle", "fixed_legible", "fixed_predictable",
                 "prior_mixture", "adaptive", "active")
IRL_LEARNERS = ("oracle", "fixed_minus", "fixed_plus", "joint")


class ConfigError(ValueError):
    """Raised for malformed or inconsistent experiment configs."""


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    population: int
    seed: int
    output_dir: str
    workers: int = 1
    # didactic worlds
    timesteps: int = 10
    strategy_mix: dict[str, float] = field(default_factory=dict)
    prior: dict[str, float] = field(default_factory=dict)
    learners: tuple[str, ...] = ()
    teachers: tuple[str, ...] = ()
    teacher_full_support: bool = True
    kl_scale: float = 20.0
    explore_weight: float = 1.0
    feedback_noise: float = 0.0
    # gridworld benchmark
    features: tuple[int, ...] = (4, 8, 16)
    rationalities: tuple[float, ...] = (5.0, 10.0, 20.0)
    noise_ratios: tuple[float, ...] = (0.0,)
    mh_samples: int = 4000
    mh_burn_in: int = 1000
    mh_step: float = 0.1

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; "
                              f"expected one of {EXPERIMENTS}")
        if self.population < 1:
            raise ConfigError("population must be at least 1")
        if self.timesteps < 1:
            raise ConfigError("timesteps must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.experiment == "sorting":
            self._check_mix(self.strategy_mix, sorting_world.STRATEGIES, "strategy_mix")
            self._check_mix(self.prior, sorting_world.STRATEGIES, "prior")
            self._check_agents(self.learners, SORTING_LEARNERS, "learners")
        elif self.experiment == "goal_teaching":
            self._check_mix(self.strategy_mix, goal_world.STRATEGIES, "strategy_mix")
            self._check_mix(self.prior, goal_world.STRATEGIES, "prior")
            self._check_agents(self.teachers, GOAL_TEACHERS, "teachers")
            if self.explore_weight < 0.0:
                raise ConfigError("explore_weight must be nonnegative")
            if not 0.0 <= self.feedback_noise < 1.0:
                raise ConfigError("feedback_noise must lie in [0, 1)")
        else:
            self._check_agents(self.learners, IRL_LEARNERS, "learners")
            if not self.features or any(f < 1 for f in self.features):
                raise ConfigError("features must be positive feature counts")
            if not self.rationalities or any(a <= 0 for a in self.rationalities):
                raise ConfigError("rationalities must be positive")
            if not self.noise_ratios or any(not 0.0 <= r <= 1.0 for r in self.noise_ratios):
                raise ConfigError("noise_ratios must lie in [0, 1]")

    @staticmethod
    def _check_mix(mix: dict[str, float], expected: tuple[str, ...], name: str) -> None:
        if set(mix) != set(expected):
            raise ConfigError(f"{name} must assign probabilities to exactly {expected}")
        if any(not 0.0 <= p <= 1.0 for p in mix.values()):
            raise ConfigError(f"{name} probabilities must lie in [0, 1]")
        if abs(sum(mix.values()) - 1.0) > 1e-9:
            raise ConfigError(f"{name} probabilities must sum to 1")

    @staticmethod
    def _check_agents(agents: tuple[str, ...], known: tuple[str, ...], name: str) -> None:
        if not agents:
            raise ConfigError(f"{name} must list at least one entry")
        unknown = [a for a in agents if a not in known]
        if unknown:
            raise ConfigError(f"unknown {name} {unknown}; expected from {known}")
        if len(set(agents)) != len(agents):
            raise ConfigError(f"{name} entries must be distinct")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            elif isinstance(value, dict):
                value = dict(value)
            out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping of settings")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict[str, Any] = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            value = data[f.name]
            if isinstance(value, list):
                value = tuple(value)
            kwargs[f.name] = value
        missing = {"experiment", "population", "seed", "output_dir"} - set(kwargs)
        if missing:
            raise ConfigError(f"missing required config keys: {sorted(missing)}")
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


def load_config(path: str | Path) -> ExperimentConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from None
    return ExperimentConfig.from_dict(data)


def save_config(config: ExperimentConfig, path: str | Path) -> None:
    Path(path).write_text(
        yaml.safe_dump(config.to_dict(), sort_keys=False), encoding="utf-8")
