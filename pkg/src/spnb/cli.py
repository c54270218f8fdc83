"""Command-line entry point.

Subcommands:
  run             execute a config and write result CSVs
  list-scenarios  print the known scenario identifiers
  bound           print closed-form bound values for a scenario/policy pair

Environment overrides (used when the flag is absent): SPNB_THREADS for the
worker count and SPNB_SEED for the base seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import ExperimentConfig, build_arms, list_scenarios
from .core import make_rng
from .metrics import (
    BoundParams,
    kl_regret_bound,
    sr_confidence_bound,
    sr_plus_confidence_bound,
    ucb1_regret_bound,
)
from .runner import batch_errors, run_batch, write_results_csv


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spnb", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a JSON config and write CSV results")
    p_run.add_argument("--config", required=True, help="path to a JSON experiment config")
    p_run.add_argument("--out", required=True, help="output directory for result CSVs")
    p_run.add_argument("--threads", type=int, default=None,
                       help="parallel workers (default: SPNB_THREADS or 1)")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the config base seed (default: SPNB_SEED or config)")

    sub.add_parser("list-scenarios", help="print known scenario identifiers")

    p_bound = sub.add_parser("bound", help="print closed-form bound values")
    p_bound.add_argument("--scenario", required=True)
    p_bound.add_argument("--policy", required=True,
                         choices=["ucb1", "bayes-ucb", "thompson", "sr", "sr-plus"])
    p_bound.add_argument("--tau", type=int, default=1000)
    p_bound.add_argument("--k", type=int, default=None, help="arm count for synthetic-rm")
    p_bound.add_argument("--data-path", default=None)
    p_bound.add_argument("--gamma", type=float, default=None)
    p_bound.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_run(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    seed = args.seed
    if seed is None and os.environ.get("SPNB_SEED"):
        seed = int(os.environ["SPNB_SEED"])
    if seed is not None:
        config = ExperimentConfig(
            scenario=config.scenario, policies=config.policies, tau=config.tau,
            n_runs=config.n_runs, base_seed=seed, k=config.k,
            data_path=config.data_path, gamma=config.gamma,
            min_gap=config.min_gap, tau_list=config.tau_list,
        )
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("SPNB_THREADS", "1"))
    results = run_batch(config, threads=threads)
    paths = write_results_csv(results, args.out)
    for path in paths:
        print(path)
    failed = batch_errors(results)
    for r in failed:
        print(f"error: {r.algorithm} run {r.run} (seed {r.seed}): {r.error}", file=sys.stderr)
    return 1 if failed else 0


def _cmd_list_scenarios() -> int:
    for name, description in list_scenarios():
        print(f"{name:16s} {description}")
    return 0


def _cmd_bound(args) -> int:
    config = ExperimentConfig.from_dict({
        "scenario": args.scenario,
        "policies": ["ucb1"],
        "tau": args.tau,
        "runs": 1,
        "seed": args.seed,
        "k": args.k,
        "data_path": args.data_path,
        "gamma": args.gamma,
    })
    arms = build_arms(config, make_rng(config.base_seed))
    params = BoundParams(arms.means, args.tau)
    if args.policy == "ucb1":
        print(f"ucb1_regret_bound(tau={args.tau}) = {ucb1_regret_bound(params)!r}")
    elif args.policy in ("bayes-ucb", "thompson"):
        kl = kl_regret_bound(params)
        pin = kl_regret_bound(params, pinsker=True)
        print(f"kl_regret_bound(tau={args.tau}) = {kl!r}")
        print(f"kl_regret_bound(tau={args.tau}, pinsker) = {pin!r}")
    elif args.policy == "sr":
        print(f"sr_confidence_bound(T={params.horizon}) = {sr_confidence_bound(params)!r}")
    elif args.policy == "sr-plus":
        print(f"sr_plus_confidence_bound(T={params.horizon}) = {sr_plus_confidence_bound(params)!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list-scenarios":
            return _cmd_list_scenarios()
        if args.command == "bound":
            return _cmd_bound(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
