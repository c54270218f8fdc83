"""Classical bandit policies behind one uniform interface.

Each policy is a bundle of sufficient statistics (per-arm pulls and
successes plus a total pull counter) together with an index rule. Adapters
own the interaction loop; this module only answers "which arm next?" and
"absorb this observation".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import special

from .core import RngStream


class PolicyKind(Enum):
    UCB1 = "ucb1"
    BAYES_UCB = "bayes-ucb"
    THOMPSON = "thompson"
    UCBE = "ucbe"


@dataclass
class PolicyParams:
    """Tunables shared across policy kinds; unused fields are ignored.

    ``ucbe_a`` is the exploration constant of the UCBE index. It is usually
    derived from a grid value c as a = c * (budget - K) / H1 with
    H1 = sum of 1/gap^2 (the optimal arm counted at the smallest suboptimal
    gap); see :func:`derive_ucbe_a`. ``horizon_pulls`` is the pull budget the
    policy plans for, used by the Bayes-UCB quantile schedule when
    ``bayes_quantile_c`` > 0.
    """

    ucbe_c: float = 2.0
    ucbe_a: float | None = None
    bayes_quantile_c: float = 0.0
    horizon_pulls: int | None = None


@dataclass
class PolicyState:
    """Sufficient statistics of one policy instance.

    Invariants: pulls.sum() == n and 0 <= wins[i] <= pulls[i]. Bayesian
    policies use the uniform prior, i.e. posterior Beta(1 + wins,
    1 + pulls - wins).
    """

    kind: PolicyKind
    pulls: np.ndarray
    wins: np.ndarray
    n: int
    params: PolicyParams = field(default_factory=PolicyParams)

    @property
    def k(self) -> int:
        return len(self.pulls)


def make_policy(kind: PolicyKind, k: int, params: PolicyParams | None = None) -> PolicyState:
    """Fresh state with zero observations for k arms."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return PolicyState(
        kind=kind,
        pulls=np.zeros(k, dtype=np.int64),
        wins=np.zeros(k, dtype=np.int64),
        n=0,
        params=params if params is not None else PolicyParams(),
    )


def policy_update(state: PolicyState, i: int, x: int) -> None:
    """Absorb one observation: pulls[i] += 1, wins[i] += x, n += 1."""
    if not 0 <= i < state.k:
        raise IndexError(f"arm index {i} out of range for {state.k} arms")
    if x not in (0, 1):
        raise ValueError(f"feedback must be 0 or 1, got {x}")
    state.pulls[i] += 1
    state.wins[i] += x
    state.n += 1


def policy_select(state: PolicyState, rng: RngStream) -> int:
    """Next arm according to the policy's index; ties go to the lowest index.

    Requires the initialization phase to be complete (every arm pulled at
    least once). Only Thompson sampling consumes the stream.
    """
    if int(state.pulls.min()) < 1:
        raise RuntimeError("policy_select called before every arm was pulled once")
    kind = state.kind
    if kind is PolicyKind.UCB1:
        index = state.wins / state.pulls + np.sqrt(2.0 * math.log(state.n) / state.pulls)
    elif kind is PolicyKind.UCBE:
        a = state.params.ucbe_a
        if a is None or a <= 0:
            raise ValueError("UCBE needs params.ucbe_a > 0 (see derive_ucbe_a)")
        index = state.wins / state.pulls + np.sqrt(a / state.pulls)
    elif kind is PolicyKind.THOMPSON:
        index = rng.beta(1.0 + state.wins, 1.0 + state.pulls - state.wins)
    elif kind is PolicyKind.BAYES_UCB:
        index = _bayes_ucb_index(state)
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unknown policy kind {kind}")
    return int(np.argmax(index))


def _bayes_ucb_index(state: PolicyState) -> np.ndarray:
    c = state.params.bayes_quantile_c
    if c == 0.0:
        level = 1.0 - 1.0 / state.n
    else:
        horizon = state.params.horizon_pulls
        if horizon is None:
            raise ValueError("Bayes-UCB with quantile exponent c > 0 needs horizon_pulls")
        level = 1.0 - 1.0 / (state.n * math.log(horizon) ** c)
    # Keep the level inside the open interval required by the quantile.
    level = min(max(level, 1e-12), 1.0 - 1e-12)
    return special.betaincinv(1.0 + state.wins, 1.0 + state.pulls - state.wins, level)


def beta_quantile(alpha: float, beta: float, p: float) -> float:
    """Inverse of the regularized incomplete beta: x with I_x(alpha, beta) = p.

    Monotone inversion accurate well below 1e-10 absolute error.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError(f"shape parameters must be positive, got ({alpha}, {beta})")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return float(special.betaincinv(alpha, beta, p))


def recommend_best(state: PolicyState) -> int:
    """Final guess: highest empirical mean, ties to larger pull count, then
    lower index."""
    if state.n < state.k:
        raise RuntimeError("recommend_best needs every arm pulled at least once")
    means = state.wins / state.pulls
    best = means.max()
    candidates = np.flatnonzero(means == best)
    return int(max(candidates, key=lambda i: (state.pulls[i], -i)))


def derive_ucbe_a(means, c: float, budget: int) -> float:
    """Map a UCBE grid value c to the exploration constant a = c*(budget-K)/H1.

    H1 sums 1/gap^2 over all arms, counting the optimal arm at the smallest
    suboptimal gap. Uses true means, so it is only available for synthetic
    instances; supply ``ucbe_a`` directly when means are unknown.
    """
    mu = np.asarray(means, dtype=float)
    k = len(mu)
    if budget <= k:
        raise ValueError(f"budget {budget} must exceed the number of arms {k}")
    star = float(mu.max())
    gaps = star - mu
    sub = gaps[gaps > 0]
    if len(sub) != k - 1:
        raise ValueError("means must have a unique maximum with positive gaps")
    h1 = float(np.sum(1.0 / sub**2) + 1.0 / sub.min() ** 2)
    return c * (budget - k) / h1
