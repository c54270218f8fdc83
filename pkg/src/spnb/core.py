"""Arms, the round clock, and seeded feedback generation.

The setting repeats rounds of K consecutive time steps. Step t offers arm
``t % K``, so every round presents each arm exactly once, in a fixed order,
and the learner either pulls the offered arm or skips. Feedback is Bernoulli
with per-arm means that stay fixed over the whole horizon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# One fixed, documented generator: PCG64 produces the same draw sequence for
# the same seed on every platform numpy supports.
RngStream = np.random.Generator


def make_rng(seed: int) -> RngStream:
    """Create an independent PCG64 stream from a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ArmSet:
    """Ordered Bernoulli arms; position in ``means`` is the within-round slot.

    A unique maximal mean is required by default. Loaders of user-supplied
    data may construct tied sets with ``tie_broken=True`` after warning; the
    optimal arm is then the lowest tied index.
    """

    means: tuple[float, ...]
    tie_broken: bool = False

    def __post_init__(self) -> None:
        means = tuple(float(m) for m in self.means)
        object.__setattr__(self, "means", means)
        if len(means) < 2:
            raise ValueError(f"need at least 2 arms, got {len(means)}")
        for i, m in enumerate(means):
            if not 0.0 <= m <= 1.0:
                raise ValueError(f"mean of arm {i} is {m}, outside [0, 1]")
        best = max(means)
        if means.count(best) > 1 and not self.tie_broken:
            raise ValueError("tied maximum mean; no unique optimal arm")

    @property
    def k(self) -> int:
        return len(self.means)

    @property
    def optimal_arm(self) -> int:
        return self.means.index(max(self.means))

    @property
    def mu_star(self) -> float:
        return max(self.means)

    def gaps(self) -> np.ndarray:
        """Per-arm gap to the optimal mean (zero at the optimal arm)."""
        return self.mu_star - np.asarray(self.means)


@dataclass(frozen=True)
class RoundClock:
    """Horizon bookkeeping: ``tau`` rounds of ``k`` steps, T = tau * k."""

    k: int
    tau: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need k >= 2, got {self.k}")
        if self.tau < 1:
            raise ValueError(f"need tau >= 1, got {self.tau}")

    @classmethod
    def from_horizon(cls, k: int, horizon: int) -> "RoundClock":
        """Build a clock from a step horizon T, which must be a multiple of k."""
        if horizon % k != 0:
            raise ValueError(f"horizon {horizon} is not a multiple of k={k}")
        return cls(k=k, tau=horizon // k)

    @property
    def horizon(self) -> int:
        """Total number of time steps T."""
        return self.k * self.tau

    def round_of(self, t: int) -> int:
        return t // self.k

    def slot_of(self, t: int) -> int:
        return t % self.k


def offered_arm(t: int, k: int) -> int:
    """Arm offered at step t: slots cycle 0..k-1 within each round."""
    if t < 0:
        raise ValueError(f"time step must be nonnegative, got {t}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return t % k


def sample_feedback(arms: ArmSet, i: int, rng: RngStream) -> int:
    """Draw one Bernoulli feedback for arm i, consuming one uniform."""
    if not 0 <= i < arms.k:
        raise IndexError(f"arm index {i} out of range for {arms.k} arms")
    return int(rng.random() < arms.means[i])


def derive_run_seed(base_seed: int, run_index: int) -> int:
    """Seed of an individual run: runs are independent and order-insensitive."""
    return base_seed + run_index
