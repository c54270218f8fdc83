import json

import numpy as np
import pytest

from spnb import (
    AlgorithmSpec,
    ExperimentConfig,
    audibert_experiment,
    build_arms,
    gen_synthetic_rm,
    list_scenarios,
    load_exceedance_csv,
    load_slot_means_csv,
    make_rng,
)


class TestGenSyntheticRm:
    def test_means_in_unit_interval(self):
        arms = gen_synthetic_rm(12, 0.1, make_rng(0))
        assert all(0.0 <= m <= 1.0 for m in arms.means)
        assert arms.k == 12

    def test_minimum_gap_pinned_exactly(self):
        for seed in range(10):
            arms = gen_synthetic_rm(8, 0.1, make_rng(seed))
            gaps = sorted(arms.mu_star - m for m in arms.means if m != arms.mu_star)
            assert gaps[0] == pytest.approx(0.1, abs=1e-12)
            assert all(g >= 0.1 - 1e-12 for g in gaps)

    def test_unique_maximum(self):
        arms = gen_synthetic_rm(25, 0.1, make_rng(3))
        assert arms.means.count(arms.mu_star) == 1

    def test_deterministic_in_seed(self):
        assert gen_synthetic_rm(6, 0.2, make_rng(42)).means == gen_synthetic_rm(
            6, 0.2, make_rng(42)
        ).means

    def test_rejects_bad_gap(self):
        with pytest.raises(ValueError):
            gen_synthetic_rm(4, 1.5, make_rng(0))


class TestAudibert:
    def test_experiment_1(self):
        arms = audibert_experiment(1)
        assert arms.k == 20
        assert arms.means == (0.5,) + (0.4,) * 19

    def test_experiment_3_geometric_gaps(self):
        arms = audibert_experiment(3)
        expected = (0.5, 0.5 - 0.37**2, 0.5 - 0.37**3, 0.5 - 0.37**4)
        assert arms.k == 4
        np.testing.assert_allclose(arms.means, expected, atol=1e-12)
        np.testing.assert_allclose(arms.means[1:], (0.3631, 0.449347, 0.48125839), atol=1e-8)

    def test_experiment_7_blocks(self):
        arms = audibert_experiment(7)
        assert arms.k == 30
        assert arms.means == (0.5,) + (0.45,) * 5 + (0.43,) * 14 + (0.38,) * 10

    def test_all_have_unique_optimum_at_half(self):
        for i in range(1, 8):
            arms = audibert_experiment(i)
            assert arms.mu_star == 0.5
            assert arms.optimal_arm == 0
            assert arms.means.count(0.5) == 1

    def test_experiment_6_hardness_anchor(self):
        arms = audibert_experiment(6)
        smallest = min(arms.mu_star - m for m in arms.means if m != arms.mu_star)
        assert smallest == pytest.approx(0.02)

    def test_invalid_id(self):
        with pytest.raises(ValueError):
            audibert_experiment(8)


class TestSlotMeansLoader:
    def write(self, tmp_path, text):
        path = tmp_path / "slots.csv"
        path.write_text(text, encoding="utf-8")
        return path

    def test_ten_rows_in_file_order(self, tmp_path):
        rows = [f"{chr(97 + i)},{0.02 + 0.005 * i}" for i in range(10)]
        path = self.write(tmp_path, "slot,mean\n" + "\n".join(rows) + "\n")
        arms = load_slot_means_csv(path)
        assert arms.k == 10
        assert arms.optimal_arm == 9
        assert arms.means[0] == pytest.approx(0.02)

    def test_empty_file(self, tmp_path):
        with pytest.raises(ValueError, match="empty"):
            load_slot_means_csv(self.write(tmp_path, ""))

    def test_header_only(self, tmp_path):
        with pytest.raises(ValueError, match="no data rows"):
            load_slot_means_csv(self.write(tmp_path, "slot,mean\n"))

    def test_out_of_range_mean_names_line(self, tmp_path):
        path = self.write(tmp_path, "slot,mean\na,0.2\nb,0.3\nc,1.2\n")
        with pytest.raises(ValueError, match="line 4"):
            load_slot_means_csv(path)

    def test_malformed_mean_names_line(self, tmp_path):
        path = self.write(tmp_path, "slot,mean\na,0.2\nb,oops\n")
        with pytest.raises(ValueError, match="line 3"):
            load_slot_means_csv(path)

    def test_duplicate_slot(self, tmp_path):
        path = self.write(tmp_path, "slot,mean\na,0.2\na,0.3\n")
        with pytest.raises(ValueError, match="duplicate"):
            load_slot_means_csv(path)

    def test_wrong_header(self, tmp_path):
        with pytest.raises(ValueError, match="header"):
            load_slot_means_csv(self.write(tmp_path, "name,value\na,0.1\n"))

    def test_tied_maximum_warns_and_breaks_low(self, tmp_path):
        path = self.write(tmp_path, "slot,mean\na,0.4\nb,0.4\nc,0.1\n")
        with pytest.warns(UserWarning, match="tied"):
            arms = load_slot_means_csv(path)
        assert arms.tie_broken
        assert arms.optimal_arm == 0


class TestExceedanceLoader:
    def write(self, tmp_path, rows):
        path = tmp_path / "conc.csv"
        text = "day,slot,concentration_cells_per_uL\n" + "\n".join(rows) + "\n"
        path.write_text(text, encoding="utf-8")
        return path

    def test_slot_fraction(self, tmp_path):
        rows = []
        for day in range(8):
            rows.append(f"{day},0,{10.0}")
            rows.append(f"{day},3,{100.0 if day < 4 else 10.0}")
        # slot 3: 4 of 8 readings above the threshold.
        arms = load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0)
        assert arms.means[1] == pytest.approx(0.5)

    def test_threshold_is_strict(self, tmp_path):
        rows = [f"0,{s},60.0" for s in range(2)] + [f"1,{s},60.1" for s in range(2)]
        rows.append("2,1,200.0")
        arms = load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0)
        assert arms.means[0] == pytest.approx(1 / 2)
        assert arms.means[1] == pytest.approx(2 / 3)

    def test_all_below_threshold_rejected(self, tmp_path):
        rows = [f"{d},{s},{5.0}" for d in range(3) for s in range(4)]
        with pytest.raises(ValueError, match="no unique maximum"):
            load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0)

    def test_non_numeric_concentration(self, tmp_path):
        path = self.write(tmp_path, ["0,0,12.0", "0,1,high"])
        with pytest.raises(ValueError, match="line 3"):
            load_exceedance_csv(path, gamma=60.0)

    def test_two_hour_grid_gives_twelve_arms(self, tmp_path):
        rng = make_rng(123)
        rows = []
        for day in range(26):
            for slot in range(0, 24, 2):
                peak = 55.0 + 20.0 * (slot == 14) + 10.0 * rng.random()
                rows.append(f"{day},{slot},{peak:.3f}")
        arms = load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0, expected_slots=12)
        assert arms.k == 12

    def test_missing_grid_slot_is_error(self, tmp_path):
        rows = [f"0,{s},100.0" for s in range(0, 24, 2) if s != 8]
        rows += [f"1,{s},10.0" for s in range(0, 24, 2) if s != 8]
        with pytest.raises(ValueError, match="zero observations"):
            load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0, expected_slots=12)

    def test_slots_ordered_numerically(self, tmp_path):
        rows = ["0,10,100.0", "0,2,10.0", "1,10,100.0", "1,2,10.0", "0,4,50.0", "1,4,70.0"]
        arms = load_exceedance_csv(self.write(tmp_path, rows), gamma=60.0)
        assert arms.means == (0.0, 0.5, 1.0)


class TestConfig:
    def test_round_trip_from_json(self, tmp_path):
        raw = {
            "scenario": "synthetic-rm",
            "policies": ["thompson", {"id": "seq-ucbe-lp", "c": 4}],
            "k": 10,
            "tau": 100,
            "runs": 7,
            "seed": 99,
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(raw))
        config = ExperimentConfig.from_json(path)
        assert config.k == 10
        assert config.n_runs == 7
        assert config.policies[0] == AlgorithmSpec("thompson")
        assert config.policies[1].ucbe_c == 4

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError, match="unknown config keys"):
            ExperimentConfig.from_dict(
                {"scenario": "synthetic-rm", "policies": ["ucb1"], "tau": 10, "typo": 1}
            )

    def test_duplicate_algorithms_rejected(self):
        with pytest.raises(ValueError, match="unique"):
            ExperimentConfig.from_dict(
                {"scenario": "synthetic-rm", "policies": ["ucb1", "ucb1"], "tau": 10, "k": 4}
            )

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ValueError, match="unknown algorithm"):
            AlgorithmSpec("hedge")


class TestBuildArms:
    def test_scenario_dispatch(self, tmp_path):
        config = ExperimentConfig.from_dict(
            {"scenario": "audibert-2", "policies": ["ucbe"], "tau": 100}
        )
        arms = build_arms(config, make_rng(0))
        assert arms.means == audibert_experiment(2).means

    def test_synthetic_needs_k(self):
        config = ExperimentConfig.from_dict(
            {"scenario": "synthetic-rm", "policies": ["ucb1"], "tau": 10}
        )
        with pytest.raises(ValueError, match="k"):
            build_arms(config, make_rng(0))

    def test_unknown_scenario(self):
        config = ExperimentConfig.from_dict(
            {"scenario": "mystery", "policies": ["ucb1"], "tau": 10}
        )
        with pytest.raises(ValueError, match="unknown scenario"):
            build_arms(config, make_rng(0))

    def test_listing_contains_core_scenarios(self):
        names = [name for name, _ in list_scenarios()]
        assert "synthetic-rm" in names
        assert "audibert-7" in names
        assert "exceedance" in names
