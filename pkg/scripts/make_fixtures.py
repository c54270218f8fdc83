#!/usr/bin/env python3
"""Regenerate the committed data fixtures.

Writes the sample CSVs under fixtures/ (exercised by the test suite and the
example configs) and the result-CSV fixtures under frontend/fixtures/ that
the figure component's tests consume, including the aggregation cross-check
values computed with the library's own CI helper.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from spnb import ExperimentConfig, aggregate_ci, make_rng, run_batch, write_results_csv

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
FRONTEND_FIXTURES = ROOT / "frontend" / "fixtures"

CTR_MEANS = (0.020, 0.030, 0.055, 0.095, 0.052, 0.035, 0.028, 0.024, 0.021, 0.018)

# Per-slot exceedance probabilities on the 2-hour grid; the 14:00 slot peaks.
EXCEEDANCE_PROFILE = {
    0: 0.05, 2: 0.05, 4: 0.10, 6: 0.12, 8: 0.18, 10: 0.28,
    12: 0.45, 14: 0.80, 16: 0.40, 18: 0.22, 20: 0.12, 22: 0.08,
}
GAMMA = 60.0


def write_ctr_fixture() -> None:
    path = FIXTURES / "ctr_slot_means.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["slot", "mean"])
        for i, mean in enumerate(CTR_MEANS):
            writer.writerow([chr(ord("a") + i), mean])
    print(path)


def write_exceedance_fixture() -> None:
    rng = make_rng(60_2024)
    path = FIXTURES / "exceedance_26days.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["day", "slot", "concentration_cells_per_uL"])
        for day in range(26):
            for slot, p in EXCEEDANCE_PROFILE.items():
                if rng.random() < p:
                    concentration = GAMMA + 1.0 + 120.0 * rng.random()
                else:
                    concentration = 5.0 + (GAMMA - 6.0) * rng.random()
                writer.writerow([day, slot, f"{concentration:.2f}"])
    print(path)


def write_frontend_fixtures() -> None:
    FRONTEND_FIXTURES.mkdir(parents=True, exist_ok=True)

    rm_config = ExperimentConfig.from_dict({
        "scenario": "synthetic-rm",
        "policies": ["thompson", "seq-thompson", "ucbrev-plus"],
        "k": 3, "tau": 40, "runs": 4, "seed": 2024,
    })
    for path in write_results_csv(run_batch(rm_config), FRONTEND_FIXTURES):
        print(path)

    bai_config = ExperimentConfig.from_dict({
        "scenario": "audibert-3",
        "policies": ["ucbe", "seq-ucbe-lp", "seq-ucbe-lr", "sr-plus"],
        "tau": 60, "tau_list": list(range(10, 62, 2)), "runs": 3, "seed": 9,
    })
    for path in write_results_csv(run_batch(bai_config), FRONTEND_FIXTURES):
        print(path)

    # Constant-ratio fixture: seq-ts regret is exactly 0.9x ts per run/round.
    flat = FRONTEND_FIXTURES / "flat_rounds.csv"
    with open(flat, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario", "algorithm", "run", "round",
                        "pseudo_regret", "npr", "pulls_of_opt"])
        for run in range(3):
            scale = 1.0 + 0.1 * run
            for rnd in range(20):
                base = (rnd + 1) * scale
                writer.writerow(["flat", "ts", run, rnd, repr(base), 1, 0])
                writer.writerow(["flat", "seq-ts", run, rnd, repr(0.9 * base), 2, 1])
    print(flat)

    # Cross-check cells for the figure component's aggregation.
    rounds_csv = FRONTEND_FIXTURES / "synthetic-rm_rounds.csv"
    by_cell: dict[tuple[str, int], list[float]] = {}
    with open(rounds_csv, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (row["algorithm"], int(row["round"]))
            by_cell.setdefault(key, []).append(float(row["pseudo_regret"]))
    cells = []
    for alg in ("thompson", "seq-thompson", "ucbrev-plus"):
        for rnd in (0, 20, 39):
            mean, halfwidth = aggregate_ci(by_cell[(alg, rnd)])
            cells.append({
                "algorithm": alg, "round": rnd,
                "mean": mean, "halfwidth": halfwidth,
            })
    expected = FRONTEND_FIXTURES / "expected_aggregates.json"
    expected.write_text(json.dumps({"pseudo_regret": cells}, indent=2) + "\n", encoding="utf-8")
    print(expected)


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    write_ctr_fixture()
    write_exceedance_fixture()
    write_frontend_fixtures()
