"""Round-aware elimination algorithms.

Both algorithms pull every surviving arm once per round, at its slot, and
shrink the surviving set at checkpoints: UCBrev+ discards arms whose upper
confidence bound falls below the best lower bound, halving its target gap
each phase; SR+ removes the single worst survivor at precomputed rounds.
Checkpoints fire at the end of the first round whose (1-based) number
reaches the formula value, so colliding or stale checkpoints are never
skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ArmSet, RngStream, RoundClock
from .seq import MODE_SRPLUS, BAIResult, Trace, _FeedbackDraw, _TraceBuilder


def log_bar(k: int) -> float:
    """The half-plus-harmonic-tail constant: 1/2 + sum_{i=2..k} 1/i."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return 0.5 + sum(1.0 / i for i in range(2, k + 1))


def sr_checkpoints(k: int, tau: int) -> tuple[int, ...]:
    """Elimination rounds for SR+: ceil((tau-k) / (log_bar(k)*(k+1-j))) for
    j = 1..k-1. Nondecreasing, all at most tau."""
    if tau <= k:
        raise ValueError(f"need tau > k, got tau={tau}, k={k}")
    lb = log_bar(k)
    return tuple(math.ceil((tau - k) / (lb * (k + 1 - j))) for j in range(1, k))


@dataclass
class EliminationState:
    """Surviving set plus phase bookkeeping, exposed for inspection in tests."""

    surviving: list[int]
    phase: int
    checkpoints: list[int]
    pulls: np.ndarray
    wins: np.ndarray
    delta_tilde: float | None = None


def _pull_survivors(
    state: EliminationState,
    round_index: int,
    k: int,
    draw: _FeedbackDraw,
    out: _TraceBuilder,
) -> None:
    # Survivors are kept sorted, so pulls happen in slot order within the round.
    base = round_index * k
    for a in state.surviving:
        x = draw(a)
        state.pulls[a] += 1
        state.wins[a] += x
        out.add(base + a, a, x)


def run_sr_plus(
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
) -> BAIResult:
    """Successive-rejects over rounds: pull every survivor each round and,
    when a checkpoint round completes, drop the survivor with the lowest
    empirical mean (ties to the lowest index). After the last elimination
    only the final arm is pulled, through round tau."""
    k = arms.k
    if clock.k != k:
        raise ValueError("clock and arm set disagree on k")
    cps = sr_checkpoints(k, clock.tau)
    state = EliminationState(
        surviving=list(range(k)),
        phase=0,
        checkpoints=list(cps),
        pulls=np.zeros(k, dtype=np.int64),
        wins=np.zeros(k, dtype=np.int64),
    )
    draw = _FeedbackDraw(arms, rng, feedback_table)
    out = _TraceBuilder()
    for r in range(1, clock.tau + 1):
        _pull_survivors(state, r - 1, k, draw, out)
        while state.phase < len(cps) and r >= cps[state.phase] and len(state.surviving) > 1:
            alive = np.asarray(state.surviving)
            means = state.wins[alive] / state.pulls[alive]
            worst = state.surviving[int(np.argmin(means))]
            state.surviving.remove(worst)
            state.phase += 1
    if len(state.surviving) != 1:  # pragma: no cover - checkpoints guarantee one survivor
        raise RuntimeError("elimination finished with more than one survivor")
    return BAIResult(
        guess=state.surviving[0],
        rounds_used=clock.tau,
        pulls_used=len(out.times),
        mode=MODE_SRPLUS,
    )


def _ucbrev_checkpoint(tau: int, delta: float) -> int:
    """First round whose completion triggers the next phase.

    The log argument tau * delta^2 can drop to or below one at small tau, in
    which case the checkpoint clamps to round 1.
    """
    arg = tau * delta * delta
    if arg <= 1.0:
        return 1
    return math.ceil(2.0 * math.log(arg) / (delta * delta))


def run_ucbrev_plus(
    arms: ArmSet,
    clock: RoundClock,
    rng: RngStream,
    feedback_table: np.ndarray | None = None,
    seed: int | None = None,
    fingerprint: str = "",
) -> Trace:
    """Improved-UCB over rounds: pull every survivor each round; at phase
    checkpoints discard arms whose mean + radius lies below the best mean -
    radius, with radius sqrt(log(t * delta^2) / (2t)) at round t, then halve
    the target gap."""
    k = arms.k
    if clock.k != k:
        raise ValueError("clock and arm set disagree on k")
    state = EliminationState(
        surviving=list(range(k)),
        phase=0,
        checkpoints=[],
        pulls=np.zeros(k, dtype=np.int64),
        wins=np.zeros(k, dtype=np.int64),
        delta_tilde=1.0,
    )
    next_cp = _ucbrev_checkpoint(clock.tau, state.delta_tilde)
    state.checkpoints.append(next_cp)
    draw = _FeedbackDraw(arms, rng, feedback_table)
    out = _TraceBuilder()
    for r in range(1, clock.tau + 1):
        _pull_survivors(state, r - 1, k, draw, out)
        while len(state.surviving) > 1 and r >= next_cp:
            delta = state.delta_tilde
            radicand = math.log(r * delta * delta) if r * delta * delta > 1.0 else 0.0
            rad = math.sqrt(radicand / (2.0 * r))
            alive = np.asarray(state.surviving)
            means = state.wins[alive] / state.pulls[alive]
            threshold = means.max() - rad
            keep = [a for a, m in zip(state.surviving, means) if m + rad >= threshold]
            dropped = len(keep) < len(state.surviving)
            state.surviving = keep
            state.phase += 1
            state.delta_tilde = delta / 2.0
            next_cp = _ucbrev_checkpoint(clock.tau, state.delta_tilde)
            state.checkpoints.append(next_cp)
            if next_cp <= r and not dropped:
                break  # stale checkpoint with no separation; retry after more data
    return out.build(k, clock.horizon, seed, fingerprint)
