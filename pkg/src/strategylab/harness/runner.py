"""Experiment orchestration: populations, worker pools, and file output.

Each simulated user owns seed-derived random streams, so results are
byte-identical across runs and across worker counts; workers only change
how the fixed per-user workload is scheduled. Raw rows are written to
``results.csv`` with per-condition summaries and pairwise Welch checks
alongside; the gridworld benchmark additionally writes a world archive
for exact replay and a wall-clock sidecar (timings are the one output
that legitimately varies between runs, so they never land in the raw
results file).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .. import goal_world, sorting_world
from ..belief import Belief, HypothesisGrid
from ..irl_bench import (
    DemonstratorParams,
    Gridworld,
    MHSettings,
    compute_metrics,
    generate_demonstration,
    infer_posterior,
    random_world,
    value_iteration,
)
from ..learning import FixedStrategy, JointLearner, PriorMixture
from ..teaching import (
    ActiveTeacher,
    AdaptiveTeacher,
    FixedStrategyTeacher,
    PriorMixtureTeacher,
)
from .config import ExperimentConfig
from .csvio import write_csv, write_json
from .seeding import EPISODE_STREAM, PARAMS_STREAM, stream_rng
from .summary import compare_agents, summarize

RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.csv"
COMPARISONS_FILE = "comparisons.csv"
WORLDS_FILE = "worlds.json"
TIMINGS_FILE = "timings.csv"

HEADERS = {
    "sorting": ("user_id", "t", "teacher_strategy", "boundary", "learner",
                "indicated", "errors"),
    "goal_teaching": ("user_id", "t", "learning_strategy", "teacher", "action",
                      "target_mass", "strategy_mass"),
    "irl": ("user_id", "n_features", "rationality", "noise_ratio", "demo_bias",
            "learner", "reward_error", "strategy_error", "policy_loss"),
}
HEADERS["irl_noise"] = HEADERS["irl"]

SUMMARY_GROUPS = {
    "sorting": (("learner", "t"), ("errors",)),
    "goal_teaching": (("teacher", "t"), ("target_mass", "strategy_mass")),
    "irl": (("n_features", "rationality", "noise_ratio", "learner"),
            ("reward_error", "strategy_error", "policy_loss")),
}
SUMMARY_GROUPS["irl_noise"] = SUMMARY_GROUPS["irl"]

COMPARE_GROUPS = {
    "sorting": ("learner", ("t",), ("errors",)),
    "goal_teaching": ("teacher", ("t",), ("target_mass",)),
    "irl": ("learner", ("n_features", "rationality", "noise_ratio"),
            ("reward_error", "strategy_error", "policy_loss")),
}
COMPARE_GROUPS["irl_noise"] = COMPARE_GROUPS["irl"]

_CHUNK = {"sorting": 250, "goal_teaching": 250, "irl": 1, "irl_noise": 1}


def _mix_draw(rng: np.random.Generator, mix: dict[str, float],
              order: tuple[str, ...]) -> str:
    draw = rng.random()
    acc = 0.0
    for name in order:
        acc += mix[name]
        if draw < acc:
            return name
    return order[-1]


def _strategy_prior(prior: dict[str, float], order: tuple[str, ...]) -> Belief:
    return Belief(HypothesisGrid(order), tuple(prior[name] for name in order))


def _sorting_learner(name: str, user_strategy: str, prior: Belief):
    if name == "oracle":
        return FixedStrategy(user_strategy)
    if name == "fixed_near_boundary":
        return FixedStrategy(sorting_world.NEAR_BOUNDARY)
    if name == "fixed_uniform_short":
        return FixedStrategy(sorting_world.UNIFORM_SHORT)
    if name == "prior_mixture":
        return PriorMixture(prior)
    if name == "joint":
        return JointLearner(prior)
    raise ValueError(f"unknown sorting learner {name!r}")


def _goal_teacher(name: str, user_strategy: str, prior: Belief,
                  kl_scale: float, explore_weight: float):
    if name == "oracle":
        return FixedStrategyTeacher(user_strategy)
    if name == "fixed_legible":
        return FixedStrategyTeacher(goal_world.LEGIBLE)
    if name == "fixed_predictable":
        return FixedStrategyTeacher(goal_world.PREDICTABLE)
    if name == "prior_mixture":
        return PriorMixtureTeacher(prior)
    if name == "adaptive":
        return AdaptiveTeacher(prior, kl_scale)
    if name == "active":
        return ActiveTeacher(prior, explore_weight, kl_scale)
    raise ValueError(f"unknown goal teacher {name!r}")


def _irl_fixed_bias(name: str, user_bias: float) -> float | None:
    if name == "oracle":
        return user_bias
    if name == "fixed_minus":
        return -1.0
    if name == "fixed_plus":
        return 1.0
    if name == "joint":
        return None
    raise ValueError(f"unknown benchmark learner {name!r}")


def _sorting_chunk(config: ExperimentConfig, condition: int,
                   users: range) -> tuple[list, list, list]:
    prior = _strategy_prior(config.prior, sorting_world.STRATEGIES)
    grid = sorting_world.boundary_grid(tuple(range(1, 11)))
    rows = []
    for user in users:
        params_rng = stream_rng(config.seed, condition, user, PARAMS_STREAM)
        boundary = grid.points[params_rng.integers(len(grid))]
        strategy = _mix_draw(params_rng, config.strategy_mix, sorting_world.STRATEGIES)
        task = sorting_world.default_task(boundary)
        for learner_name in config.learners:
            kind = _sorting_learner(learner_name, strategy, prior)
            episode_rng = stream_rng(config.seed, condition, user, EPISODE_STREAM)
            steps = sorting_world.run_episode_stream(
                episode_rng, task, strategy, kind, config.timesteps,
                full_support=config.teacher_full_support)
            for step in steps:
                rows.append((user, step.t, strategy, boundary, learner_name,
                             step.indicated, step.errors))
    return rows, [], []


def _goal_chunk(config: ExperimentConfig, condition: int,
                users: range) -> tuple[list, list, list]:
    prior = _strategy_prior(config.prior, goal_world.STRATEGIES)
    scenario = goal_world.GoalScenario()
    rows = []
    for user in users:
        params_rng = stream_rng(config.seed, condition, user, PARAMS_STREAM)
        strategy = _mix_draw(params_rng, config.strategy_mix, goal_world.STRATEGIES)
        for teacher_name in config.teachers:
            kind = _goal_teacher(teacher_name, strategy, prior,
                                 config.kl_scale, config.explore_weight)
            episode_rng = stream_rng(config.seed, condition, user, EPISODE_STREAM)
            steps = goal_world.run_teaching_episode(
                episode_rng, scenario, strategy, kind, config.timesteps,
                feedback_noise=config.feedback_noise)
            for step in steps:
                rows.append((user, step.t, strategy, teacher_name,
                             step.action.label(), step.target_mass,
                             step.strategy_mass))
    return rows, [], []


def _irl_cells(config: ExperimentConfig) -> list[tuple[int, float, float]]:
    return [(f, a, r) for f in config.features
            for a in config.rationalities for r in config.noise_ratios]


def _irl_chunk(config: ExperimentConfig, condition: int,
               users: range) -> tuple[list, list, list]:
    n_features, rationality, noise_ratio = _irl_cells(config)[condition]
    settings = MHSettings(samples=config.mh_samples, burn_in=config.mh_burn_in,
                          step=config.mh_step)
    rows, timing_rows, world_records = [], [], []
    for user in users:
        params_rng = stream_rng(config.seed, condition, user, PARAMS_STREAM)
        world = random_world(params_rng, n_features)
        weights = params_rng.uniform(-1.0, 1.0, size=n_features)
        bias = float(params_rng.uniform(-1.0, 1.0))
        params = DemonstratorParams(weights=weights, bias=bias,
                                    rationality=rationality, noise_ratio=noise_ratio)
        demo = generate_demonstration(params_rng, world, params)
        record = world.to_dict()
        record.update({
            "user_id": user,
            "condition": condition,
            "master_seed": config.seed,
            "n_features": n_features,
            "rationality": rationality,
            "noise_ratio": noise_ratio,
            "demo_bias": bias,
            "weights": [float(w) for w in weights],
        })
        world_records.append(record)
        for learner_name in config.learners:
            fixed_bias = _irl_fixed_bias(learner_name, bias)
            chain_rng = stream_rng(config.seed, condition, user, EPISODE_STREAM)
            started = time.perf_counter()
            posterior = infer_posterior(world, demo, rationality, chain_rng,
                                        fixed_bias=fixed_bias, settings=settings)
            metrics = compute_metrics(posterior, world, params)
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            rows.append((user, n_features, rationality, noise_ratio, bias,
                         learner_name, metrics.reward_error,
                         metrics.strategy_error, metrics.policy_loss))
            timing_rows.append((user, n_features, rationality, noise_ratio,
                                learner_name, elapsed_ms))
    return rows, timing_rows, world_records


_CHUNK_RUNNERS = {
    "sorting": _sorting_chunk,
    "goal_teaching": _goal_chunk,
    "irl": _irl_chunk,
    "irl_noise": _irl_chunk,
}


def _run_chunk(config: ExperimentConfig, condition: int, start: int, stop: int):
    rows, timings, worlds = _CHUNK_RUNNERS[config.experiment](
        config, condition, range(start, stop))
    return condition, start, rows, timings, worlds


def warm_kernels() -> None:
    """Compile the benchmark kernels once (before forking workers)."""
    rng = np.random.default_rng(0)
    world = Gridworld(2, 2, np.array([[1.0], [0.0], [1.0], [0.0]]))
    value_iteration(world, np.array([0.5]))
    params = DemonstratorParams(weights=np.array([0.5]), bias=0.0, rationality=5.0)
    demo = generate_demonstration(rng, world, params)
    infer_posterior(world, demo, 5.0, rng,
                    settings=MHSettings(samples=2, burn_in=2, random_starts=2,
                                        descend_top=1))


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> dict[str, Path]:
    """Run every condition of an experiment and write its output files."""
    workers = config.workers if workers is None else workers
    out_dir = Path(config.output_dir)
    n_conditions = len(_irl_cells(config)) if config.experiment in ("irl", "irl_noise") else 1
    chunk = _CHUNK[config.experiment]
    tasks = []
    for condition in range(n_conditions):
        for start in range(0, config.population, chunk):
            tasks.append((condition, start, min(start + chunk, config.population)))

    if workers > 1 and len(tasks) > 1:
        if config.experiment in ("irl", "irl_noise"):
            warm_kernels()
        results = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, config, c, a, b) for c, a, b in tasks]
            for future in futures:
                results.append(future.result())
    else:
        results = [_run_chunk(config, c, a, b) for c, a, b in tasks]

    results.sort(key=lambda item: (item[0], item[1]))
    rows = [row for item in results for row in item[2]]
    timings = [row for item in results for row in item[3]]
    worlds = [rec for item in results for rec in item[4]]

    paths = {"results": out_dir / RESULTS_FILE}
    write_csv(paths["results"], HEADERS[config.experiment], rows)
    summary_paths = write_summaries(config.experiment, paths["results"], out_dir)
    paths.update(summary_paths)
    if config.experiment in ("irl", "irl_noise"):
        paths["timings"] = out_dir / TIMINGS_FILE
        write_csv(paths["timings"],
                  ("user_id", "n_features", "rationality", "noise_ratio",
                   "learner", "wall_time_ms"), timings)
        paths["worlds"] = out_dir / WORLDS_FILE
        write_json(paths["worlds"], {"worlds": worlds})
    return paths


def detect_experiment(header: list[str]) -> str:
    for name, columns in HEADERS.items():
        if list(columns) == header:
            return name
    raise ValueError(f"unrecognized results header: {header}")


def write_summaries(experiment: str, results_path: Path, out_dir: Path) -> dict[str, Path]:
    from .csvio import read_csv

    raw = read_csv(results_path)
    group_cols, metric_cols = SUMMARY_GROUPS[experiment]
    summary_rows = summarize(raw, group_cols, metric_cols)
    summary_path = out_dir / SUMMARY_FILE
    write_csv(summary_path,
              tuple(group_cols) + ("metric", "mean", "sem", "n"),
              [tuple(v for _, v in row.keys) + (row.metric, row.mean, row.sem, row.n)
               for row in summary_rows])

    agent_col, cmp_groups, cmp_metrics = COMPARE_GROUPS[experiment]
    comparison_rows = compare_agents(raw, agent_col, cmp_groups, cmp_metrics)
    comparisons_path = out_dir / COMPARISONS_FILE
    write_csv(comparisons_path,
              tuple(cmp_groups) + ("metric", f"{agent_col}_a", f"{agent_col}_b",
                                   "mean_diff", "welch_t", "dof"),
              [tuple(v for _, v in row.keys) + (row.metric, row.agent_a, row.agent_b,
                                                row.mean_diff, row.welch_t, row.dof)
               for row in comparison_rows])
    return {"summary": summary_path, "comparisons": comparisons_path}


def replay_user(worlds_path: str | Path, index: int = 0) -> list[dict]:
    """Re-run one archived benchmark user end to end and return per-learner metrics.

    The archive stores the master seed and stream keys, so the world,
    demonstrator, and chains are rebuilt exactly; a mismatch between the
    regenerated world and the stored one raises.
    """
    from .csvio import read_json

    records = read_json(worlds_path)["worlds"]
    if not 0 <= index < len(records):
        raise IndexError(f"world index {index} out of range (have {len(records)})")
    record = records[index]
    condition = int(record["condition"])
    user = int(record["user_id"])
    seed = int(record["master_seed"])
    n_features = int(record["n_features"])
    rationality = float(record["rationality"])
    noise_ratio = float(record["noise_ratio"])

    params_rng = stream_rng(seed, condition, user, PARAMS_STREAM)
    world = random_world(params_rng, n_features)
    weights = params_rng.uniform(-1.0, 1.0, size=n_features)
    bias = float(params_rng.uniform(-1.0, 1.0))
    stored = Gridworld.from_dict(record)
    if not np.array_equal(world.features, stored.features):
        raise ValueError("regenerated world does not match the archive; wrong seed?")
    if not np.allclose(weights, np.asarray(record["weights"])) or abs(bias - record["demo_bias"]) > 1e-12:
        raise ValueError("regenerated demonstrator does not match the archive")

    params = DemonstratorParams(weights=weights, bias=bias,
                                rationality=rationality, noise_ratio=noise_ratio)
    demo = generate_demonstration(params_rng, world, params)
    out = []
    for learner_name in ("oracle", "fixed_minus", "fixed_plus", "joint"):
        chain_rng = stream_rng(seed, condition, user, EPISODE_STREAM)
        posterior = infer_posterior(world, demo, rationality, chain_rng,
                                    fixed_bias=_irl_fixed_bias(learner_name, bias))
        metrics = compute_metrics(posterior, world, params)
        out.append({"learner": learner_name,
                    "reward_error": metrics.reward_error,
                    "strategy_error": metrics.strategy_error,
                    "policy_loss": metrics.policy_loss})
    return out
