"""Command-line entry point: run experiments, summarize results, replay worlds."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, load_config
from .csvio import read_csv
from .runner import detect_experiment, replay_user, run_experiment, write_summaries


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strategylab",
        description="Simulation experiments for learning and teaching under "
                    "interaction-strategy uncertainty.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment from a YAML config")
    run.add_argument("config", help="path to the experiment config")
    run.add_argument("--seed", type=int, help="override the master seed")
    run.add_argument("--population", type=int, help="override the population size")
    run.add_argument("--output-dir", help="override the output directory")
    run.add_argument("--workers", type=int, help="override the worker count")

    summ = sub.add_parser("summarize", help="summarize a raw results.csv")
    summ.add_argument("results", help="path to results.csv")
    summ.add_argument("--out-dir", help="directory for summary files "
                                        "(default: alongside the results)")

    rep = sub.add_parser("replay", help="re-run one archived benchmark user")
    rep.add_argument("worlds", help="path to worlds.json")
    rep.add_argument("--index", type=int, default=0,
                     help="record index within the archive (default 0)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = load_config(args.config)
            overrides = {}
            if args.seed is not None:
                overrides["seed"] = args.seed
            if args.population is not None:
                overrides["population"] = args.population
            if args.output_dir is not None:
                overrides["output_dir"] = args.output_dir
            if args.workers is not None:
                overrides["workers"] = args.workers
            if overrides:
                config = replace(config, **overrides)
            paths = run_experiment(config)
            for name, path in sorted(paths.items()):
                print(f"{name}: {path}")
        elif args.command == "summarize":
            results = Path(args.results)
            raw = read_csv(results)
            if not raw:
                raise ValueError(f"no rows in {results}")
            experiment = detect_experiment(list(raw[0].keys()))
            out_dir = Path(args.out_dir) if args.out_dir else results.parent
            paths = write_summaries(experiment, results, out_dir)
            for name, path in sorted(paths.items()):
                print(f"{name}: {path}")
        else:
            rows = replay_user(args.worlds, args.index)
            print(f"{'learner':18s} {'reward_error':>12s} {'strategy_error':>14s} {'policy_loss':>11s}")
            for row in rows:
                strategy_error = ("" if row["strategy_error"] is None
                                  else f"{row['strategy_error']:.4f}")
                print(f"{row['learner']:18s} {row['reward_error']:12.4f} "
                      f"{strategy_error:>14s} {row['policy_loss']:11.4f}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
