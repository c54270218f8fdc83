"""Batch orchestration: fan out seeded independent runs, compute per-run
metrics, and persist results as CSV.

Each run owns its environment copy, policy state, and random stream (seed =
base + run index), so batches are embarrassingly parallel and their output
is byte-identical at any worker count: results are gathered and sorted
deterministically before writing.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import ArmSet, RoundClock, derive_run_seed, make_rng
from .elimination import run_sr_plus, run_ucbrev_plus
from .experiments import AlgorithmSpec, ExperimentConfig, build_arms
from .metrics import npr, opt_star, opti_star, pseudo_regret
from .policies import PolicyKind, PolicyParams, derive_ucbe_a, make_policy, recommend_best
from .seq import (
    MODE_NAIVE,
    BAIResult,
    Trace,
    run_naive,
    run_seq,
    run_seq_ucbe_lp,
    run_seq_ucbe_lr,
)

ROUNDS_HEADER = ["scenario", "algorithm", "run", "round", "pseudo_regret", "npr", "pulls_of_opt"]
BAI_HEADER = ["scenario", "algorithm", "run", "guess", "correct", "rounds_used", "pulls_used"]

_FILE_SCENARIOS = ("slot-means", "exceedance")


@dataclass
class RunResult:
    """Everything one run contributes to the output set."""

    scenario: str
    algorithm: str
    run: int
    seed: int
    tau: int
    fingerprint: str
    duration_s: float
    regret: np.ndarray | None = None
    npr: np.ndarray | None = None
    opt_pulls: np.ndarray | None = None
    bai: BAIResult | None = None
    correct: bool | None = None
    error: str | None = None


def config_fingerprint(scenario: str, algorithm: str, means, tau: int, seed: int) -> str:
    payload = json.dumps(
        {"scenario": scenario, "algorithm": algorithm, "means": list(means),
         "tau": tau, "seed": seed},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _policy_for(spec: AlgorithmSpec, arms: ArmSet, tau: int, sequential: bool):
    kind = {
        "ucb1": PolicyKind.UCB1,
        "bayes-ucb": PolicyKind.BAYES_UCB,
        "thompson": PolicyKind.THOMPSON,
        "ucbe": PolicyKind.UCBE,
    }[spec.algorithm.removeprefix("seq-").removesuffix("-lp").removesuffix("-lr")]
    params = PolicyParams(
        horizon_pulls=tau * arms.k if sequential else tau,
        bayes_quantile_c=spec.bayes_quantile_c if spec.bayes_quantile_c is not None else 0.0,
    )
    if kind is PolicyKind.UCBE:
        if spec.ucbe_a is not None:
            params.ucbe_a = spec.ucbe_a
        else:
            params.ucbe_c = spec.ucbe_c if spec.ucbe_c is not None else 2.0
            params.ucbe_a = derive_ucbe_a(arms.means, params.ucbe_c, tau)
    return make_policy(kind, arms.k, params)


def execute_run(
    scenario: str,
    arm_means: tuple[float, ...],
    tie_broken: bool,
    spec: AlgorithmSpec,
    tau: int,
    run_index: int,
    seed: int,
) -> RunResult:
    """One seeded run of one algorithm; never raises, reports failures."""
    started = time.perf_counter()
    fingerprint = config_fingerprint(scenario, spec.algorithm, arm_means, tau, seed)
    result = RunResult(
        scenario=scenario,
        algorithm=spec.algorithm,
        run=run_index,
        seed=seed,
        tau=tau,
        fingerprint=fingerprint,
        duration_s=0.0,
    )
    try:
        arms = ArmSet(arm_means, tie_broken=tie_broken)
        clock = RoundClock(arms.k, tau)
        rng = make_rng(seed)
        alg = spec.algorithm
        trace: Trace | None = None
        if alg in ("ucb1", "bayes-ucb", "thompson"):
            policy = _policy_for(spec, arms, tau, sequential=False)
            trace = run_naive(policy, arms, clock, rng, seed=seed, fingerprint=fingerprint)
        elif alg in ("seq-ucb1", "seq-bayes-ucb", "seq-thompson"):
            policy = _policy_for(spec, arms, tau, sequential=True)
            trace = run_seq(policy, arms, clock, rng, seed=seed, fingerprint=fingerprint)
        elif alg == "ucbrev-plus":
            trace = run_ucbrev_plus(arms, clock, rng, seed=seed, fingerprint=fingerprint)
        elif alg == "ucbe":
            policy = _policy_for(spec, arms, tau, sequential=False)
            run_naive(policy, arms, clock, rng, seed=seed, fingerprint=fingerprint)
            result.bai = BAIResult(
                guess=recommend_best(policy), rounds_used=tau, pulls_used=tau, mode=MODE_NAIVE
            )
        elif alg == "seq-ucbe-lp":
            policy = _policy_for(spec, arms, tau, sequential=True)
            result.bai = run_seq_ucbe_lp(policy, arms, clock, tau, rng)
        elif alg == "seq-ucbe-lr":
            policy = _policy_for(spec, arms, tau, sequential=True)
            result.bai = run_seq_ucbe_lr(policy, arms, clock, rng)
        elif alg == "sr-plus":
            result.bai = run_sr_plus(arms, clock, rng)
        else:
            raise ValueError(f"unknown algorithm id {alg!r}")

        if trace is not None:
            result.regret = pseudo_regret(trace, arms).values
            result.npr = npr(trace, clock).values
            opt_rounds = np.zeros(tau, dtype=np.int64)
            hits = trace.pull_times[trace.pull_arms == arms.optimal_arm] // arms.k
            opt_rounds[hits] = 1
            result.opt_pulls = opt_rounds
            # Consistency guard between the scalar and per-round views.
            assert abs(opt_star(trace, arms) * trace.n_pulls - opt_rounds.sum()) < 1e-9
            assert abs(opti_star(trace, arms, clock) * tau - opt_rounds.sum()) < 1e-9
        if result.bai is not None:
            result.correct = result.bai.guess == arms.optimal_arm
    except Exception as exc:  # noqa: BLE001 - a failed run must not sink the batch
        result.error = f"{type(exc).__name__}: {exc}"
    result.duration_s = time.perf_counter() - started
    return result


def _execute_star(args) -> RunResult:
    return execute_run(*args)


def run_batch(config: ExperimentConfig, threads: int = 1) -> list[RunResult]:
    """Execute n_runs per algorithm (times the tau sweep, if any).

    Run seeds are base + global run index; the arm set is drawn once per
    config with seed base + total runs, so every algorithm faces the same
    instance. Output order and content do not depend on ``threads``.
    """
    taus = list(config.tau_list) if config.tau_list else [config.tau]
    total_runs = config.n_runs * len(taus)
    arms = build_arms(config, make_rng(derive_run_seed(config.base_seed, total_runs)))
    for spec in config.policies:
        if (
            spec.algorithm.endswith("ucbe") or spec.algorithm.startswith("seq-ucbe")
        ) and spec.ucbe_a is None and config.scenario in _FILE_SCENARIOS:
            raise ValueError(
                f"{spec.algorithm} on scenario {config.scenario!r} needs an explicit 'a' "
                "(the exploration constant cannot be derived from unknown true means)"
            )
    tasks = []
    for spec in config.policies:
        for ti, tau in enumerate(taus):
            for r in range(config.n_runs):
                global_run = ti * config.n_runs + r
                seed = derive_run_seed(config.base_seed, global_run)
                tasks.append(
                    (config.scenario, arms.means, arms.tie_broken, spec, tau, global_run, seed)
                )
    if threads <= 1:
        results = [_execute_star(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_execute_star, tasks, chunksize=8))
    order = {spec.algorithm: i for i, spec in enumerate(config.policies)}
    results.sort(key=lambda r: (r.scenario, order[r.algorithm], r.run))
    return results


def batch_errors(results: list[RunResult]) -> list[RunResult]:
    return [r for r in results if r.error is not None]


def write_results_csv(results: list[RunResult], out_dir: str | Path) -> list[Path]:
    """Persist a batch: per scenario, `<scenario>_rounds.csv` for the
    per-round series and `<scenario>_bai.csv` for identification outcomes.
    Errored runs are excluded (report them via :func:`batch_errors`)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    scenarios = sorted({r.scenario for r in results})
    for scenario in scenarios:
        chunk = [r for r in results if r.scenario == scenario and r.error is None]
        rounds_rows = [r for r in chunk if r.regret is not None]
        bai_rows = [r for r in chunk if r.bai is not None]
        if rounds_rows:
            path = out_dir / f"{scenario}_rounds.csv"
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(ROUNDS_HEADER)
                for r in rounds_rows:
                    for rnd in range(r.tau):
                        writer.writerow([
                            r.scenario, r.algorithm, r.run, rnd,
                            repr(float(r.regret[rnd])),
                            int(r.npr[rnd]),
                            int(r.opt_pulls[rnd]),
                        ])
            written.append(path)
        if bai_rows:
            path = out_dir / f"{scenario}_bai.csv"
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(BAI_HEADER)
                for r in bai_rows:
                    writer.writerow([
                        r.scenario, r.algorithm, r.run,
                        r.bai.guess, int(bool(r.correct)),
                        r.bai.rounds_used, r.bai.pulls_used,
                    ])
            written.append(path)
    return written
