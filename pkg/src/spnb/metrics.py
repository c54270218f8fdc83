"""Evaluation metrics over traces and identification results, closed-form
bound evaluators, and cross-run aggregation.

Pseudo-regret measures the per-round shortfall against the oracle that
pulls the optimal arm exactly once per round: a round that never pulls the
optimal arm pays mu_star, and every pull of a suboptimal arm additionally
pays its gap. This keeps the series nonnegative and nondecreasing and makes
blanket pulling expensive rather than free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ArmSet, RoundClock
from .seq import BAIResult, Trace

# Stable metric identifiers used as CSV column names.
METRIC_PSEUDO_REGRET = "pseudo_regret"
METRIC_NPR = "npr"
METRIC_OPT_STAR = "opt_star"
METRIC_OPTI_STAR = "opti_star"
METRIC_DELTA_HAT = "delta_hat"
METRIC_PSI_ROUNDS = "psi_rounds"
METRIC_PSI_PULLS = "psi_pulls"


@dataclass(frozen=True)
class MetricSeries:
    name: str
    values: np.ndarray
    run: int | str = ""

    def __len__(self) -> int:
        return len(self.values)


def _pulls_per_round(trace: Trace, weights=None) -> np.ndarray:
    rounds = trace.pull_times // trace.k
    return np.bincount(rounds, weights=weights, minlength=trace.tau)


def pseudo_regret(trace: Trace, arms: ArmSet) -> MetricSeries:
    """Cumulative pseudo-regret per round (see module docstring)."""
    if trace.k != arms.k:
        raise ValueError("trace and arm set disagree on k")
    gaps = arms.gaps()
    gap_cost = _pulls_per_round(trace, weights=gaps[trace.pull_arms])
    opt_rounds = np.zeros(trace.tau, dtype=bool)
    opt_times = trace.pull_times[trace.pull_arms == arms.optimal_arm]
    opt_rounds[opt_times // trace.k] = True
    increments = gap_cost + arms.mu_star * (~opt_rounds)
    return MetricSeries(METRIC_PSEUDO_REGRET, np.cumsum(increments))


def npr(trace: Trace, clock: RoundClock) -> MetricSeries:
    """Number of pulls in each round."""
    if trace.horizon != clock.horizon or trace.k != clock.k:
        raise ValueError("trace and clock disagree on the horizon")
    return MetricSeries(METRIC_NPR, _pulls_per_round(trace).astype(np.int64))


def opt_star(trace: Trace, arms: ArmSet) -> float:
    """Share of pulls that went to the optimal arm."""
    if trace.n_pulls == 0:
        raise ValueError("trace has no pulls")
    return float(np.mean(trace.pull_arms == arms.optimal_arm))


def opti_star(trace: Trace, arms: ArmSet, clock: RoundClock) -> float:
    """Fraction of rounds in which the optimal arm was pulled."""
    hits = int(np.sum(trace.pull_arms == arms.optimal_arm))
    return hits / clock.tau


def delta_hat(results: list[BAIResult], arms: ArmSet) -> float:
    """Misidentification rate of a batch of guesses."""
    if not results:
        raise ValueError("no results")
    wrong = sum(1 for r in results if r.guess != arms.optimal_arm)
    return wrong / len(results)


def psi_rounds(theta_alg: float, theta_ref: float) -> float:
    """Relative change in rounds used versus the reference algorithm."""
    return (theta_alg - theta_ref) / theta_ref


def psi_pulls(t_prime: float, tau: float) -> float:
    """Relative change in pulls versus the one-pull-per-round reference."""
    return (t_prime - tau) / tau


def aggregate_ci(samples) -> tuple[float, float | None]:
    """Mean and 95% normal-approximation halfwidth 1.96 * s / sqrt(n).

    With fewer than two samples the halfwidth is undefined and reported as
    None.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("no samples")
    mean = float(x.mean())
    if x.size < 2:
        return mean, None
    halfwidth = 1.96 * float(x.std(ddof=1)) / math.sqrt(x.size)
    return mean, halfwidth


@dataclass(frozen=True)
class BoundParams:
    """Instance description consumed by the bound evaluators."""

    means: tuple[float, ...]
    tau: int

    def __post_init__(self) -> None:
        means = tuple(float(m) for m in self.means)
        object.__setattr__(self, "means", means)
        if len(means) < 2:
            raise ValueError("need at least 2 arms")
        if self.tau < 1:
            raise ValueError(f"need tau >= 1, got {self.tau}")
        star = max(means)
        if means.count(star) > 1:
            raise ValueError("tied maximum mean: suboptimal gaps must be positive")

    @property
    def k(self) -> int:
        return len(self.means)

    @property
    def horizon(self) -> int:
        return self.k * self.tau

    @property
    def mu_star(self) -> float:
        return max(self.means)

    def suboptimal_gaps(self) -> np.ndarray:
        mu = np.asarray(self.means)
        return self.mu_star - mu[mu < self.mu_star]

    @property
    def h1(self) -> float:
        """Sum of 1/gap^2, the optimal arm counted at the smallest gap."""
        gaps = self.suboptimal_gaps()
        return float(np.sum(1.0 / gaps**2) + 1.0 / gaps.min() ** 2)

    @property
    def h2(self) -> float:
        """max_i i / gap_(i)^2 over gaps in increasing order, the optimal
        arm's gap taken equal to the smallest suboptimal one."""
        ordered = np.sort(self.suboptimal_gaps())
        full = np.concatenate(([ordered[0]], ordered))
        ranks = np.arange(1, self.k + 1)
        return float(np.max(ranks / full**2))


def ucb1_regret_bound(params: BoundParams) -> float:
    """Closed-form UCB1 regret bound for the one-pull-per-round adapter:
    sum_i 8(mu*+gap_i)/gap_i^2 * ln(tau) + sum_i (1 + pi^2/3 - 8K/gap_i^2)
    * (mu*+gap_i)."""
    gaps = params.suboptimal_gaps()
    if np.any(gaps <= 0):
        raise ValueError("suboptimal gaps must be positive")
    loss = params.mu_star + gaps
    log_term = np.sum(8.0 * loss / gaps**2) * math.log(params.tau)
    const_term = np.sum((1.0 + math.pi**2 / 3.0 - 8.0 * params.k / gaps**2) * loss)
    return float(log_term + const_term)


def sr_confidence_bound(params: BoundParams) -> float:
    """Misidentification bound of round-per-pull successive rejects:
    K(K-1)/2 * exp(-(T - K^2) / (K * log_bar(K) * H2))."""
    from .elimination import log_bar

    k = params.k
    t = params.horizon
    return k * (k - 1) / 2.0 * math.exp(-(t - k * k) / (k * log_bar(k) * params.h2))


def sr_plus_confidence_bound(params: BoundParams) -> float:
    """Misidentification bound of SR+: K(K-1)/2 * exp(-(2T-1) / (2 H2))."""
    k = params.k
    t = params.horizon
    return k * (k - 1) / 2.0 * math.exp(-(2.0 * t - 1.0) / (2.0 * params.h2))


def bernoulli_kl(p: float, q: float) -> float:
    """KL divergence between Bernoulli(p) and Bernoulli(q)."""
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    if p == q:
        return 0.0
    if q in (0.0, 1.0):
        return math.inf

    def term(a: float, b: float) -> float:
        return 0.0 if a == 0.0 else a * math.log(a / b)

    return term(p, q) + term(1.0 - p, 1.0 - q)


def kl_regret_bound(params: BoundParams, epsilon: float = 0.0, pinsker: bool = False) -> float:
    """Leading logarithmic regret term of the KL-based policies:
    sum_i (1+eps)(mu*+gap_i)/KL(mu_i, mu*) * ln(tau), with the Pinsker
    relaxation 1/KL -> 1/(2 gap^2) selectable."""
    mu = np.asarray(params.means)
    star = params.mu_star
    total = 0.0
    for m in mu[mu < star]:
        gap = star - m
        denom = 2.0 * gap * gap if pinsker else bernoulli_kl(float(m), star)
        total += (1.0 + epsilon) * (star + gap) / denom
    return total * math.log(params.tau)
