"""Experiment configuration, orchestration, and output."""

from .config import ConfigError, ExperimentConfig, load_config, save_config
from .runner import replay_user, run_experiment, warm_kernels
from .seeding import stream_rng, stream_seed
from .summary import ComparisonRow, SummaryRow, compare_agents, mean_sem, summarize, welch

__all__ = [
    "ComparisonRow",
    "ConfigError",
    "ExperimentConfig",
    "SummaryRow",
    "compare_agents",
    "load_config",
    "mean_sem",
    "replay_user",
    "run_experiment",
    "save_config",
    "stream_rng",
    "stream_seed",
    "summarize",
    "warm_kernels",
    "welch",
]
