"""Checks on the committed data fixtures and example configs."""

import csv
import json
from pathlib import Path

import pytest

from spnb import (
    ExperimentConfig,
    aggregate_ci,
    load_exceedance_csv,
    load_slot_means_csv,
    run_batch,
)

ROOT = Path(__file__).resolve().parent.parent


def test_ctr_fixture_loads_ten_peaked_slots():
    arms = load_slot_means_csv(ROOT / "fixtures" / "ctr_slot_means.csv")
    assert arms.k == 10
    assert arms.optimal_arm == 3
    assert max(arms.means) < 0.1  # click-through scale


def test_exceedance_fixture_reduces_to_twelve_arms():
    arms = load_exceedance_csv(
        ROOT / "fixtures" / "exceedance_26days.csv", gamma=60.0, expected_slots=12
    )
    assert arms.k == 12
    # Slots sort numerically 0,2,..,22; the peak sits at 14:00.
    assert arms.optimal_arm == 7


def test_exceedance_fixture_runs_at_494_rounds():
    # The 26-day record is stationary, so the horizon just tiles it.
    config = ExperimentConfig.from_dict({
        "scenario": "exceedance",
        "policies": ["sr-plus"],
        "tau": 494,
        "runs": 1,
        "seed": 4,
        "data_path": str(ROOT / "fixtures" / "exceedance_26days.csv"),
        "gamma": 60.0,
    })
    (result,) = run_batch(config)
    assert result.error is None
    assert result.bai.rounds_used == 494


def test_example_configs_parse():
    for name in (
        "synthetic_rm_k25.json",
        "audibert1_bai.json",
        "ctr_slot_means.json",
        "exceedance_bai.json",
    ):
        config = ExperimentConfig.from_json(ROOT / "configs" / name)
        assert config.n_runs >= 1


def test_frontend_expected_aggregates_match_primary_ci():
    # The committed cross-check file must stay in sync with aggregate_ci.
    fixtures = ROOT / "frontend" / "fixtures"
    by_cell = {}
    with open(fixtures / "synthetic-rm_rounds.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (row["algorithm"], int(row["round"]))
            by_cell.setdefault(key, []).append(float(row["pseudo_regret"]))
    expected = json.loads((fixtures / "expected_aggregates.json").read_text())
    assert expected["pseudo_regret"], "cross-check file is empty"
    for cell in expected["pseudo_regret"]:
        mean, halfwidth = aggregate_ci(by_cell[(cell["algorithm"], cell["round"])])
        assert mean == pytest.approx(cell["mean"], abs=1e-12)
        assert halfwidth == pytest.approx(cell["halfwidth"], abs=1e-12)


def test_flat_fixture_ratio_is_constant():
    rows = []
    with open(ROOT / "frontend" / "fixtures" / "flat_rounds.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    by = {}
    for row in rows:
        by[(row["algorithm"], int(row["run"]), int(row["round"]))] = float(row["pseudo_regret"])
    for run in range(3):
        for rnd in range(20):
            assert by[("seq-ts", run, rnd)] / by[("ts", run, rnd)] == pytest.approx(0.9)
