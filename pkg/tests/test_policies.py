import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from spnb import (
    PolicyKind,
    PolicyParams,
    beta_quantile,
    derive_ucbe_a,
    make_policy,
    make_rng,
)
from spnb.policies import policy_select, policy_update, recommend_best

from oracle import bisect_beta_quantile


def state_with(kind, pulls, wins, params=None):
    st_ = make_policy(kind, len(pulls), params)
    st_.pulls = np.asarray(pulls, dtype=np.int64)
    st_.wins = np.asarray(wins, dtype=np.int64)
    st_.n = int(sum(pulls))
    return st_


class TestSelect:
    def test_ucb1_equal_bonus_higher_mean_wins(self):
        st_ = state_with(PolicyKind.UCB1, (1, 1), (1, 0))
        assert policy_select(st_, make_rng(0)) == 0

    def test_ucb1_full_tie_breaks_low(self):
        st_ = state_with(PolicyKind.UCB1, (1, 1), (0, 0))
        assert policy_select(st_, make_rng(0)) == 0

    def test_ucbe_direct_index_evaluation(self):
        # Indices: 1/4 + sqrt(1/4) = 0.75 against 0/1 + sqrt(1/1) = 1.0.
        st_ = state_with(PolicyKind.UCBE, (4, 1), (1, 0), PolicyParams(ucbe_a=1.0))
        assert policy_select(st_, make_rng(0)) == 1

    def test_requires_initialization(self):
        st_ = state_with(PolicyKind.UCB1, (1, 0), (0, 0))
        with pytest.raises(RuntimeError, match="before every arm"):
            policy_select(st_, make_rng(0))

    def test_deterministic_kinds_ignore_rng(self):
        for kind in (PolicyKind.UCB1, PolicyKind.UCBE, PolicyKind.BAYES_UCB):
            params = PolicyParams(ucbe_a=2.0, horizon_pulls=100)
            a = policy_select(state_with(kind, (3, 5, 2), (1, 3, 1), params), make_rng(1))
            b = policy_select(state_with(kind, (3, 5, 2), (1, 3, 1), params), make_rng(999))
            assert a == b

    def test_deterministic_kinds_do_not_consume_stream(self):
        for kind in (PolicyKind.UCB1, PolicyKind.UCBE, PolicyKind.BAYES_UCB):
            params = PolicyParams(ucbe_a=2.0, horizon_pulls=100)
            rng = make_rng(7)
            policy_select(state_with(kind, (3, 5, 2), (1, 3, 1), params), rng)
            assert rng.random() == make_rng(7).random()

    def test_thompson_consumes_stream(self):
        rng = make_rng(7)
        policy_select(state_with(PolicyKind.THOMPSON, (3, 5), (1, 3)), rng)
        assert rng.random() != make_rng(7).random()

    def test_bayes_ucb_matches_manual_quantile(self):
        st_ = state_with(PolicyKind.BAYES_UCB, (4, 6), (3, 2), PolicyParams(horizon_pulls=50))
        level = 1.0 - 1.0 / st_.n
        manual = [beta_quantile(1 + 3, 1 + 1, level), beta_quantile(1 + 2, 1 + 4, level)]
        assert policy_select(st_, make_rng(0)) == int(np.argmax(manual))

    @given(st.integers(min_value=0, max_value=20))
    @settings(max_examples=30, deadline=None)
    def test_ucb1_index_monotone_in_wins(self, w):
        pulls = (25, 9)
        lo = state_with(PolicyKind.UCB1, pulls, (w, 3))
        hi = state_with(PolicyKind.UCB1, pulls, (w + 1, 3))

        def index(s, i):
            return s.wins[i] / s.pulls[i] + math.sqrt(2 * math.log(s.n) / s.pulls[i])

        assert index(hi, 0) > index(lo, 0)
        assert index(hi, 1) == index(lo, 1)
        # Never demoted: if arm 0 is picked at w wins, it is picked at w+1.
        if policy_select(lo, make_rng(0)) == 0:
            assert policy_select(hi, make_rng(0)) == 0

    def test_thompson_frequency_matches_integration_oracle(self):
        # Frozen posterior Beta(6,4) vs Beta(4,6); exact P(X0 > X1) by
        # numerical integration of pdf0 * cdf1.
        exact, _ = integrate.quad(
            lambda x: stats.beta.pdf(x, 6, 4) * stats.beta.cdf(x, 4, 6), 0, 1
        )
        st_ = state_with(PolicyKind.THOMPSON, (8, 8), (5, 3))
        rng = make_rng(31415)
        n = 10**5
        hits = sum(policy_select(st_, rng) == 0 for _ in range(n))
        assert abs(hits / n - exact) < 0.01


class TestUpdate:
    def test_first_pull(self):
        st_ = make_policy(PolicyKind.UCB1, 2)
        policy_update(st_, 0, 1)
        assert list(st_.pulls) == [1, 0]
        assert list(st_.wins) == [1, 0]
        assert st_.n == 1

    def test_counts_accumulate(self):
        st_ = state_with(PolicyKind.UCB1, (3, 2), (1, 2))
        policy_update(st_, 1, 0)
        assert list(st_.pulls) == [3, 3]
        assert list(st_.wins) == [1, 2]
        assert st_.n == 6

    def test_invalid_arm(self):
        st_ = make_policy(PolicyKind.UCB1, 2)
        with pytest.raises(IndexError):
            policy_update(st_, 5, 1)

    @given(
        st.lists(
            st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=1)),
            max_size=30,
        ),
        st.randoms(),
    )
    @settings(max_examples=50)
    def test_update_order_is_irrelevant(self, events, shuffler):
        a = make_policy(PolicyKind.UCB1, 4)
        b = make_policy(PolicyKind.UCB1, 4)
        for i, x in events:
            policy_update(a, i, x)
        shuffled = list(events)
        shuffler.shuffle(shuffled)
        for i, x in shuffled:
            policy_update(b, i, x)
        assert list(a.pulls) == list(b.pulls)
        assert list(a.wins) == list(b.wins)
        assert a.n == b.n


class TestBetaQuantile:
    def test_uniform(self):
        assert beta_quantile(1, 1, 0.3) == pytest.approx(0.3, abs=1e-10)

    def test_square_cdf(self):
        assert beta_quantile(2, 1, 0.25) == pytest.approx(0.5, abs=1e-10)

    def test_symmetric(self):
        assert beta_quantile(5, 5, 0.5) == pytest.approx(0.5, abs=1e-10)

    def test_rejects_bad_domain(self):
        with pytest.raises(ValueError):
            beta_quantile(0, 1, 0.5)
        with pytest.raises(ValueError):
            beta_quantile(1, 1, 1.0)

    @given(
        st.floats(min_value=0.01, max_value=0.98),
        st.floats(min_value=0.005, max_value=0.01),
        st.floats(min_value=0.2, max_value=40),
        st.floats(min_value=0.2, max_value=40),
    )
    @settings(max_examples=60, deadline=None)
    def test_strictly_increasing_in_p(self, p, dp, alpha, beta):
        assert beta_quantile(alpha, beta, p + dp) > beta_quantile(alpha, beta, p)

    def test_round_trip_through_cdf(self):
        for alpha in (0.5, 1.0, 3.0, 17.5):
            for beta in (0.5, 2.0, 9.0):
                for p in (0.001, 0.25, 0.5, 0.9, 0.999):
                    q = beta_quantile(alpha, beta, p)
                    assert abs(special.betainc(alpha, beta, q) - p) <= 1e-9

    def test_agrees_with_bisection(self):
        for alpha, beta, p in ((2.5, 4.0, 0.1), (7.0, 1.5, 0.77), (1.0, 9.0, 0.5)):
            assert beta_quantile(alpha, beta, p) == pytest.approx(
                bisect_beta_quantile(alpha, beta, p), abs=1e-9
            )


class TestRecommendBest:
    def test_clear_winner(self):
        assert recommend_best(state_with(PolicyKind.UCB1, (10, 10), (5, 1))) == 0

    def test_higher_empirical_mean(self):
        assert recommend_best(state_with(PolicyKind.UCB1, (10, 20), (5, 5))) == 0

    def test_mean_tie_prefers_more_pulls(self):
        assert recommend_best(state_with(PolicyKind.UCB1, (4, 8), (2, 4))) == 1

    def test_full_tie_prefers_low_index(self):
        assert recommend_best(state_with(PolicyKind.UCB1, (8, 8), (4, 4))) == 0


class TestDeriveUcbeA:
    def test_two_arm_hand_value(self):
        # H1 = 1/0.4^2 + 1/0.4^2 = 12.5, so a = 2 * (1000 - 2) / 12.5.
        a = derive_ucbe_a((0.9, 0.5), 2.0, 1000)
        assert a == pytest.approx(2 * 998 / 12.5, rel=1e-12)

    def test_budget_must_exceed_arms(self):
        with pytest.raises(ValueError):
            derive_ucbe_a((0.9, 0.5), 2.0, 2)

    def test_needs_unique_max(self):
        with pytest.raises(ValueError):
            derive_ucbe_a((0.5, 0.5, 0.1), 1.0, 100)
