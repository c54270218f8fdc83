"""Synthetic instance generators and CSV ingestion.

Synthetic regret-minimization instances draw means uniformly and condition
the smallest gap to a target value; the best-arm suite uses seven fixed
instances from the classical fixed-budget benchmark. Real-world data enters
through two documented CSV schemas: per-slot means (header ``slot,mean``)
and raw threshold-exceedance records (header
``day,slot,concentration_cells_per_uL``).
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .core import ArmSet, RngStream

SCENARIO_SYNTHETIC_RM = "synthetic-rm"
SCENARIO_SLOT_MEANS = "slot-means"
SCENARIO_EXCEEDANCE = "exceedance"

RM_ALGORITHMS = (
    "ucb1",
    "bayes-ucb",
    "thompson",
    "seq-ucb1",
    "seq-bayes-ucb",
    "seq-thompson",
    "ucbrev-plus",
)
BAI_ALGORITHMS = ("ucbe", "seq-ucbe-lp", "seq-ucbe-lr", "sr-plus")


@dataclass(frozen=True)
class AlgorithmSpec:
    """One algorithm entry of a config: an identifier plus optional tunables."""

    algorithm: str
    ucbe_c: float | None = None
    ucbe_a: float | None = None
    bayes_quantile_c: float | None = None

    def __post_init__(self) -> None:
        if self.algorithm not in RM_ALGORITHMS + BAI_ALGORITHMS:
            raise ValueError(f"unknown algorithm id {self.algorithm!r}")

    @property
    def is_bai(self) -> bool:
        return self.algorithm in BAI_ALGORITHMS


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative experiment description, loadable from JSON."""

    scenario: str
    policies: tuple[AlgorithmSpec, ...]
    tau: int
    n_runs: int
    base_seed: int
    k: int | None = None
    data_path: str | None = None
    gamma: float | None = None
    min_gap: float = 0.1
    tau_list: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n_runs < 1:
            raise ValueError(f"need n_runs >= 1, got {self.n_runs}")
        if self.tau < 1:
            raise ValueError(f"need tau >= 1, got {self.tau}")
        if not self.policies:
            raise ValueError("config lists no algorithms")
        ids = [p.algorithm for p in self.policies]
        if len(set(ids)) != len(ids):
            raise ValueError("algorithm ids must be unique within a config")

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {
            "scenario",
            "policies",
            "k",
            "tau",
            "runs",
            "seed",
            "data_path",
            "gamma",
            "min_gap",
            "tau_list",
        }
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        policies = []
        for entry in raw.get("policies", []):
            if isinstance(entry, str):
                policies.append(AlgorithmSpec(algorithm=entry))
            else:
                policies.append(AlgorithmSpec(
                    algorithm=entry["id"],
                    ucbe_c=entry.get("c"),
                    ucbe_a=entry.get("a"),
                    bayes_quantile_c=entry.get("bayes_quantile_c"),
                ))
        return cls(
            scenario=raw["scenario"],
            policies=tuple(policies),
            tau=int(raw["tau"]),
            n_runs=int(raw.get("runs", 1)),
            base_seed=int(raw.get("seed", 0)),
            k=int(raw["k"]) if raw.get("k") is not None else None,
            data_path=raw.get("data_path"),
            gamma=float(raw["gamma"]) if raw.get("gamma") is not None else None,
            min_gap=float(raw.get("min_gap", 0.1)),
            tau_list=tuple(int(t) for t in raw.get("tau_list", ())),
        )


def gen_synthetic_rm(k: int, min_gap: float, rng: RngStream, max_attempts: int = 100_000) -> ArmSet:
    """Uniform means conditioned on a minimum gap.

    Rejection-samples until the gap between the two best means is at least
    ``min_gap``, then shifts the runner-up so the smallest suboptimal gap
    equals ``min_gap`` exactly (equality has probability zero under the
    continuous draw, so it is realized by construction).
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if not 0.0 < min_gap < 1.0:
        raise ValueError(f"min_gap must lie in (0, 1), got {min_gap}")
    for attempt in range(max_attempts):
        means = rng.random(k)
        order = means.argsort()
        best, second = order[-1], order[-2]
        if means[best] - means[second] >= min_gap:
            means[second] = means[best] - min_gap
            return ArmSet(tuple(means))
    raise RuntimeError(
        f"no instance with min gap {min_gap} found for k={k} in {max_attempts} attempts"
    )


_AUDIBERT = {
    1: [0.5] + [0.4] * 19,
    2: [0.5] + [0.42] * 5 + [0.38] * 14,
    3: [0.5] + [0.5 - 0.37**i for i in (2, 3, 4)],
    4: [0.5, 0.42] + [0.4] * 2 + [0.35] * 2,
    5: [0.5] + [0.5 - 0.025 * i for i in range(2, 16)],
    6: [0.5, 0.48] + [0.37] * 18,
    7: [0.5] + [0.45] * 5 + [0.43] * 14 + [0.38] * 10,
}


def audibert_experiment(exp_id: int) -> ArmSet:
    """The seven fixed best-arm instances; arm 0 is optimal at 0.5 in all."""
    if exp_id not in _AUDIBERT:
        raise ValueError(f"experiment id must be in 1..7, got {exp_id}")
    return ArmSet(tuple(_AUDIBERT[exp_id]))


def _tie_checked(means: list[float], labels: list[str], source: str) -> ArmSet:
    best = max(means)
    if means.count(best) > 1:
        if means.count(best) == len(means):
            raise ValueError(f"{source}: all means equal, no unique maximum")
        tied = [labels[i] for i, m in enumerate(means) if m == best]
        warnings.warn(
            f"{source}: maximum mean tied across slots {tied}; "
            "breaking the tie toward the lowest index",
            stacklevel=3,
        )
        return ArmSet(tuple(means), tie_broken=True)
    return ArmSet(tuple(means))


def load_slot_means_csv(path: str | Path) -> ArmSet:
    """Load per-slot means in file order. Header: ``slot,mean``."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != ["slot", "mean"]:
            raise ValueError(f"{path}: expected header 'slot,mean', got {header}")
        means: list[float] = []
        labels: list[str] = []
        seen: set[str] = set()
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
            slot, raw = row[0].strip(), row[1].strip()
            if slot in seen:
                raise ValueError(f"{path}: line {lineno}: duplicate slot {slot!r}")
            seen.add(slot)
            try:
                mean = float(raw)
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: malformed mean {raw!r}") from None
            if not 0.0 <= mean <= 1.0:
                raise ValueError(f"{path}: line {lineno}: mean {mean} outside [0, 1]")
            labels.append(slot)
            means.append(mean)
    if not means:
        raise ValueError(f"{path}: no data rows")
    return _tie_checked(means, labels, str(path))


def load_exceedance_csv(
    path: str | Path,
    gamma: float,
    expected_slots: int | None = None,
) -> ArmSet:
    """Reduce raw concentration records to per-slot exceedance probabilities.

    Header: ``day,slot,concentration_cells_per_uL``. Each slot's mean is the
    fraction of its readings strictly above the warning threshold ``gamma``.
    Slots are ordered numerically when all labels parse as numbers, else
    lexicographically. With ``expected_slots`` set, a missing slot of the
    grid (zero observations) is an error.
    """
    path = Path(path)
    counts: dict[str, int] = {}
    exceed: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        expected_header = ["day", "slot", "concentration_cells_per_ul"]
        if [h.strip().lower() for h in header] != expected_header:
            raise ValueError(
                f"{path}: expected header 'day,slot,concentration_cells_per_uL', got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
            slot = row[1].strip()
            try:
                concentration = float(row[2])
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric concentration {row[2]!r}"
                ) from None
            counts[slot] = counts.get(slot, 0) + 1
            if concentration > gamma:
                exceed[slot] = exceed.get(slot, 0) + 1
    if not counts:
        raise ValueError(f"{path}: no data rows")
    if expected_slots is not None and len(counts) != expected_slots:
        raise ValueError(
            f"{path}: expected {expected_slots} slots with observations, found {len(counts)} "
            "(a slot of the grid has zero observations)"
        )
    try:
        labels = sorted(counts, key=float)
    except ValueError:
        labels = sorted(counts)
    means = [exceed.get(s, 0) / counts[s] for s in labels]
    return _tie_checked(means, labels, str(path))


def build_arms(config: ExperimentConfig, rng: RngStream) -> ArmSet:
    """Resolve a config's scenario to the arm set every run will share."""
    scenario = config.scenario
    if scenario == SCENARIO_SYNTHETIC_RM:
        if config.k is None:
            raise ValueError("synthetic-rm needs the arm count k")
        return gen_synthetic_rm(config.k, config.min_gap, rng)
    if scenario.startswith("audibert-"):
        return audibert_experiment(int(scenario.split("-", 1)[1]))
    if scenario == SCENARIO_SLOT_MEANS:
        if config.data_path is None:
            raise ValueError("slot-means needs data_path")
        return load_slot_means_csv(config.data_path)
    if scenario == SCENARIO_EXCEEDANCE:
        if config.data_path is None or config.gamma is None:
            raise ValueError("exceedance needs data_path and gamma")
        return load_exceedance_csv(config.data_path, config.gamma)
    raise ValueError(f"unknown scenario {scenario!r}")


def list_scenarios() -> list[tuple[str, str]]:
    """Known scenario identifiers with one-line descriptions."""
    entries = [
        (SCENARIO_SYNTHETIC_RM, "uniform means with the smallest gap pinned to min_gap (needs k)"),
        (SCENARIO_SLOT_MEANS, "per-slot means from a 'slot,mean' CSV (needs data_path)"),
        (
            SCENARIO_EXCEEDANCE,
            "threshold-exceedance probabilities from raw concentration CSV "
            "(needs data_path and gamma)",
        ),
    ]
    for i in sorted(_AUDIBERT):
        k = len(_AUDIBERT[i])
        entries.append((f"audibert-{i}", f"fixed best-arm instance {i} (K={k}, best mean 0.5)"))
    return entries
