"""Round-clock adapters for classical policies.

Three ways to run a policy against the pull/no-pull clock:

* ``run_naive``: one decision per round, pulled at the slot where the chosen
  arm is offered; every other step is a skip.
* ``run_seq``: pull whenever the offered arm equals the policy's current
  recommendation; the recommendation is refreshed only after a pull, so the
  pull-filtered history is exactly the history the bare policy would produce.
* ``run_seq_ucbe_lp`` / ``run_seq_ucbe_lr``: the sequential wrapper stopped
  at an equal pull budget (fewer rounds) or an equal round budget (more
  pulls), returning a best-arm guess.

The first round is always an initialization sweep that pulls every arm once
in slot order and counts those pulls in n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .core import ArmSet, RngStream, RoundClock, sample_feedback
from .policies import PolicyState, policy_select, policy_update, recommend_best

PULL = "PULL"
SKIP = "SKIP"

MODE_NAIVE = "NAIVE"
MODE_LP = "LP"
MODE_LR = "LR"
MODE_SRPLUS = "SRPLUS"


class StepRecord(NamedTuple):
    t: int
    round: int
    offered: int
    action: str
    feedback: int | None
    n_after: int


@dataclass(frozen=True)
class Trace:
    """Full decision log of one run, stored compactly as pull events.

    Skips carry no information beyond their position, so only pulls are
    materialized; ``steps()`` reconstructs the one-record-per-step view.
    """

    k: int
    horizon: int
    pull_times: np.ndarray
    pull_arms: np.ndarray
    pull_feedback: np.ndarray
    seed: int | None = None
    fingerprint: str = ""

    @property
    def tau(self) -> int:
        return self.horizon // self.k

    @property
    def n_pulls(self) -> int:
        return len(self.pull_times)

    def steps(self) -> Iterator[StepRecord]:
        """Yield one record per time step, 0 .. horizon-1."""
        j = 0
        n = 0
        for t in range(self.horizon):
            offered = t % self.k
            if j < self.n_pulls and self.pull_times[j] == t:
                n += 1
                yield StepRecord(t, t // self.k, offered, PULL, int(self.pull_feedback[j]), n)
                j += 1
            else:
                yield StepRecord(t, t // self.k, offered, SKIP, None, n)

    def pull_pairs(self) -> list[tuple[int, int]]:
        """The (arm, feedback) sequence of the pulls, in time order."""
        return list(zip(self.pull_arms.tolist(), self.pull_feedback.tolist()))


@dataclass(frozen=True)
class BAIResult:
    """Outcome of a best-arm identification run."""

    guess: int
    rounds_used: int
    pulls_used: int
    mode: str
    truncated: bool = False


def make_feedback_table(arms: ArmSet, draws_per_arm: int, rng: RngStream) -> np.ndarray:
    """Pre-draw feedback: entry (i, j) is the j-th pull of arm i.

    Sharing one table between two executions lets them observe identical
    realizations regardless of when each arm gets pulled.
    """
    u = rng.random((arms.k, draws_per_arm))
    return (u < np.asarray(arms.means)[:, None]).astype(np.int8)


class _FeedbackDraw:
    """Per-run feedback source: lazy draws from the stream, or replay from a
    pre-drawn table indexed by (arm, per-arm pull count)."""

    def __init__(self, arms: ArmSet, rng: RngStream, table: np.ndarray | None):
        self._arms = arms
        self._rng = rng
        self._table = table
        self._count = np.zeros(arms.k, dtype=np.int64)

    def __call__(self, i: int) -> int:
        if self._table is None:
            x = sample_feedback(self._arms, i, self._rng)
        else:
            x = int(self._table[i, self._count[i]])
        self._count[i] += 1
        return x


class _TraceBuilder:
    def __init__(self) -> None:
        self.times: list[int] = []
        self.arms: list[int] = []
        self.feedback: list[int] = []

    def add(self, t: int, arm: int, x: int) -> None:
        self.times.append(t)
        self.arms.append(arm)
        self.feedback.append(x)

    def build(self, k: int, horizon: int, seed: int | None, fingerprint: str) -> Trace:
        return Trace(
            k=k,
            horizon=horizon,
            pull_times=np.asarray(self.times, dtype=np.int64),
            pull_arms=np.asarray(self.arms, dtype=np.int64),
            pull_feedback=np.asarray(self.feedback, dtype=np.int8),
            seed=seed,
            fingerprint=fingerprint,
        )


def run_naive(
    policy: PolicyState,
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
    seed: int | None = None,
    fingerprint: str = "",
) -> Trace:
    """One pull per round: the policy decides once, at the chosen arm's slot.

    The first k rounds pull arms 0..k-1 (initialization), after which the
    policy's index rule takes over. Total pulls equal tau by construction.
    """
    k = arms.k
    if clock.k != k:
        raise ValueError("clock and arm set disagree on k")
    if clock.tau < k:
        raise ValueError(f"need tau >= k for initialization, got tau={clock.tau}, k={k}")
    draw = _FeedbackDraw(arms, rng, feedback_table)
    out = _TraceBuilder()
    for r in range(clock.tau):
        a = r if r < k else policy_select(policy, rng)
        x = draw(a)
        policy_update(policy, a, x)
        out.add(r * k + a, a, x)
    return out.build(k, clock.horizon, seed, fingerprint)


def _seq_engine(
    policy: PolicyState,
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None,
    max_pulls: int | None,
) -> _TraceBuilder:
    """Shared loop of the sequential adapter.

    Between pulls the recommendation is constant, so the engine jumps
    directly to the next step offering it instead of iterating skips.
    """
    k = arms.k
    if clock.k != k:
        raise ValueError("clock and arm set disagree on k")
    if clock.tau < k:
        raise ValueError(f"need tau >= k for initialization, got tau={clock.tau}, k={k}")
    if max_pulls is not None and max_pulls < k:
        raise ValueError(f"pull budget {max_pulls} cannot cover the initialization sweep of {k}")
    horizon = clock.horizon
    draw = _FeedbackDraw(arms, rng, feedback_table)
    out = _TraceBuilder()

    for a in range(k):  # initialization sweep occupies round 0
        x = draw(a)
        policy_update(policy, a, x)
        out.add(a, a, x)
        if max_pulls is not None and policy.n >= max_pulls:
            return out

    rec = policy_select(policy, rng)
    cursor = k
    while cursor < horizon:
        t_pull = cursor + (rec - cursor) % k
        if t_pull >= horizon:
            break
        x = draw(rec)
        policy_update(policy, rec, x)
        out.add(t_pull, rec, x)
        if max_pulls is not None and policy.n >= max_pulls:
            break
        rec = policy_select(policy, rng)
        cursor = t_pull + 1
    return out


def run_seq(
    policy: PolicyState,
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
    seed: int | None = None,
    fingerprint: str = "",
) -> Trace:
    """Pull whenever the offered arm matches the current recommendation.

    Skips trigger no update and no re-selection, which is what makes the
    pull-filtered trace identical to a bare run of the same policy.
    """
    out = _seq_engine(policy, arms, clock, rng, feedback_table, max_pulls=None)
    return out.build(arms.k, clock.horizon, seed, fingerprint)


def run_seq_ucbe_lp(
    policy: PolicyState,
    arms: ArmSet,
    clock: RoundClock,
    budget: int,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
) -> BAIResult:
    """Sequential run halted the instant the pull budget is reached.

    If the horizon ends first the result is flagged truncated and reports
    the pulls actually performed.
    """
    out = _seq_engine(policy, arms, clock, rng, feedback_table, max_pulls=budget)
    pulls = len(out.times)
    rounds_used = out.times[-1] // arms.k + 1
    return BAIResult(
        guess=recommend_best(policy),
        rounds_used=rounds_used,
        pulls_used=pulls,
        mode=MODE_LP,
        truncated=pulls < budget,
    )


def run_seq_ucbe_lr(
    policy: PolicyState,
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
) -> BAIResult:
    """Sequential run over the full round budget; reports the pulls it took."""
    out = _seq_engine(policy, arms, clock, rng, feedback_table, max_pulls=None)
    return BAIResult(
        guess=recommend_best(policy),
        rounds_used=clock.tau,
        pulls_used=len(out.times),
        mode=MODE_LR,
    )
