"""Tests for the UCB1 policy."""

import math
import warnings

import numpy as np
import pytest

from bandits.base_policy import ArmStats, BasePolicy
from bandits.ucb1 import UCB1Policy, ucb1_index, ucb1_select, ucb1_update

N_SEEDS = 200
HORIZON = 10_000
GAP = 0.4


def bernoulli_run(policy, means, horizon, rng):
    for _ in range(horizon):
        arm = policy.select()
        policy.update(arm, float(rng.random() < means[arm]))
    return policy


class TestUcb1Select:
    """Functional selection rule."""

    def test_unplayed_arm_first(self):
        stats = [ArmStats(0, 0.0, 0.0), ArmStats(5, 0.8, 4.0)]
        assert ucb1_select(stats, 5) == 0

    def test_single_arm(self):
        assert ucb1_select([ArmStats(3, 0.1, 0.3)], 3) == 0

    def test_index_arithmetic(self):
        stats = [ArmStats(4, 0.5, 2.0), ArmStats(100, 0.9, 90.0)]
        indices = ucb1_index([0.5, 0.9], [4, 100], 100)
        np.testing.assert_allclose(indices, [2.017, 1.203], atol=1e-3)
        assert ucb1_select(stats, 100) == 0

    def test_ties_go_to_lowest_arm(self):
        stats = [ArmStats(2, 0.5, 1.0)] * 3
        assert ucb1_select(stats, 6) == 0

    def test_empty_arm_set(self):
        with pytest.raises(ValueError):
            ucb1_select([], 0)


class TestUcb1Update:
    """Running averages."""

    def test_first_reward(self):
        assert ucb1_update(ArmStats(), 0.3) == ArmStats(1, 0.3, 0.3)

    def test_two_point_average(self):
        stats = ucb1_update(ArmStats(1, 0.3, 0.3), 0.5)
        assert stats.pulls == 2
        assert stats.mean_reward == pytest.approx(0.4)

    def test_reward_out_of_range(self):
        with pytest.raises(ValueError):
            ucb1_update(ArmStats(), 1.2)


class TestUcb1Policy:
    """Stateful policy."""

    @pytest.fixture
    def policy(self):
        return UCB1Policy(3)

    def test_plays_every_arm_once_first(self, policy):
        arms = []
        for _ in range(3):
            arm = policy.select()
            arms.append(arm)
            policy.update(arm, 0.0)
        assert arms == [0, 1, 2]

    def test_indices_of_unplayed_arms_are_infinite(self, policy):
        policy.update(1, 0.5)
        indices = policy.indices()
        assert np.isinf(indices[0]) and np.isinf(indices[2])
        assert np.isfinite(indices[1])

    def test_unplayed_arms_raise_no_numpy_warning(self, policy):
        policy.update(1, 0.5)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            indices = policy.indices()
            np.testing.assert_array_equal(ucb1_index([0.0, 0.2], [0, 0], 0), [np.inf, np.inf])
        assert indices[1] == pytest.approx(0.5)

    def test_stats_snapshot(self, policy):
        policy.update(2, 1.0)
        policy.update(2, 0.0)
        assert policy.stats()[2] == ArmStats(2, 0.5, 1.0)
        assert policy.best_arm() == 2

    def test_reset(self, policy):
        policy.update(0, 1.0)
        policy.reset()
        assert policy.t == 0
        assert policy.pulls.sum() == 0

    def test_base_policy_is_abstract(self):
        with pytest.raises(NotImplementedError):
            BasePolicy(2).select()

    def test_needs_an_arm(self):
        with pytest.raises(ValueError):
            UCB1Policy(0)

    def test_logarithmic_suboptimal_pulls(self):
        limit = 8 * math.log(HORIZON) / GAP ** 2 + 10
        within = 0
        for seed in range(N_SEEDS):
            policy = bernoulli_run(UCB1Policy(2), [0.7, 0.3], HORIZON, np.random.default_rng(seed))
            within += policy.pulls[1] <= limit
        assert within >= 0.95 * N_SEEDS
