"""Tests for the ACK/NACK environment."""

from dataclasses import replace

import numpy as np
import pytest

from jamming.action_grid import ActionSpace
from jamming.environment import (Feedback, Fidelity, JammingEnvironment, expected_rewards,
                                 multi_victim_step, step)
from jamming.rewards import RewardSpec
from jamming.victims import AdaptRule, SnrPolicy, VictimProfile
from models.link_simulator import JammerAction
from models.modulation import ModulationScheme

ACTION = JammerAction(ModulationScheme.BPSK, 10.0, 0.3)
RAW_SER = RewardSpec("raw-ser")


def periodic_victim(window, name):
    return VictimProfile(policy=SnrPolicy.ADAPTIVE, snr=10.0, snr_range=(1.0, 100.0),
                         adapt_rule=AdaptRule.PERIODIC, adapt_window=window, n_symbols=100, name=name)


class TestFeedback:
    """Observation record."""

    def test_reward_range(self):
        with pytest.raises(ValueError):
            Feedback(acks=0, nacks=1, per_estimate=1.0, ser_estimate=1.0, reward=1.5)


class TestStep:
    """Single-step observations."""

    def test_unpowered_victim_guesses(self, rng):
        victim = VictimProfile(snr=0.0, snr_range=(0.0, 100.0), n_symbols=1000)
        awgn = JammerAction(ModulationScheme.AWGN, 10.0, 1.0)
        feedback = step(victim, awgn, Fidelity.ANALYTIC, RAW_SER, 1, rng)
        assert feedback.reward == pytest.approx(0.5, abs=0.06)
        assert feedback.nacks == 1
        assert feedback.saturated
        assert feedback.ser_estimate == 1.0

    def test_strong_victim_below_hinge(self, rng):
        victim = VictimProfile(snr=100.0, n_symbols=1000)
        weak = JammerAction(ModulationScheme.AWGN, 1.0, 1.0)
        feedback = step(victim, weak, Fidelity.ANALYTIC, RewardSpec.parse("thresholded-per:0.8"), 4, rng)
        assert feedback.reward == 0.0
        assert feedback.acks == 4

    @pytest.mark.parametrize("fidelity, steps, tolerance", [
        (Fidelity.ANALYTIC, 2000, 0.002),
        (Fidelity.SYMBOL, 200, 0.005),
    ])
    def test_mean_reward_matches_expectation(self, bpsk_victim, fixed_space, fidelity, steps, tolerance):
        env = JammingEnvironment([bpsk_victim], fixed_space, RAW_SER, fidelity=fidelity, seed=3)
        rewards = [env.step(ACTION).reward for _ in range(steps)]
        assert np.mean(rewards) == pytest.approx(env.expected_reward(ACTION), abs=tolerance)

    def test_packets_per_step(self, bpsk_victim, rng):
        feedback = step(bpsk_victim, ACTION, Fidelity.ANALYTIC, RAW_SER, 5, rng)
        assert feedback.acks + feedback.nacks == 5
        assert feedback.per_estimate == pytest.approx(feedback.nacks / 5)


class TestMultiVictimStep:
    """Validation and combination across victims."""

    def test_weights_combine_pers(self, bpsk_victim, rng):
        dead = VictimProfile(snr=0.0, snr_range=(0.0, 100.0), n_symbols=1000)
        feedback = multi_victim_step([dead, bpsk_victim], JammerAction("awgn", 1.0, 1.0), [0.25, 0.75],
                                     RewardSpec("raw-per"), Fidelity.ANALYTIC, rng)
        assert feedback.victim_pers == (1.0, 0.0)
        assert feedback.reward == pytest.approx(0.25)

    @pytest.mark.parametrize("weights", [[0.5], [0.7, 0.7], [-0.5, 1.5]])
    def test_bad_weights(self, bpsk_victim, weights, rng):
        with pytest.raises(ValueError):
            multi_victim_step([bpsk_victim, bpsk_victim], ACTION, weights, RAW_SER, Fidelity.ANALYTIC, rng)

    def test_thresholded_ser_single_victim(self, bpsk_victim, rng):
        with pytest.raises(ValueError):
            multi_victim_step([bpsk_victim, bpsk_victim], ACTION, [0.5, 0.5],
                              RewardSpec.parse("thresholded-ser:0.1"), Fidelity.ANALYTIC, rng)

    def test_needs_packets(self, bpsk_victim, rng):
        with pytest.raises(ValueError):
            multi_victim_step([bpsk_victim], ACTION, [1.0], RAW_SER, Fidelity.ANALYTIC, rng,
                              packets_per_step=0)


class TestJammingEnvironment:
    """Run state, adaptation and oracle lookups."""

    def test_deterministic_for_seed(self, bpsk_victim, fixed_space):
        runs = []
        for _ in range(2):
            env = JammingEnvironment([bpsk_victim], fixed_space, RAW_SER, fidelity="symbol", seed=11)
            runs.append([env.step(ACTION) for _ in range(20)])
        assert runs[0] == runs[1]

    def test_adaptive_windows_are_independent(self, fixed_space):
        env = JammingEnvironment([periodic_victim(5, "slow"), periodic_victim(3, "fast")],
                                 fixed_space, RAW_SER, seed=1)
        for t in range(1, 16):
            before = [p.snr for p in env.profiles]
            env.step(ACTION)
            changed = [p.snr != b for p, b in zip(env.profiles, before)]
            assert changed == [t % 5 == 0, t % 3 == 0]

    def test_cache_follows_victim_state(self, fixed_space):
        env = JammingEnvironment([periodic_victim(1, "v")], fixed_space, RAW_SER, seed=5)
        grid = fixed_space.grid(2)
        before = env.expected_rewards(grid).copy()
        env.step(ACTION)
        after = env.expected_rewards(grid)
        assert not np.allclose(before, after)
        np.testing.assert_allclose(after, expected_rewards(env.profiles, env.weights, grid, RAW_SER))

    def test_expected_reward_matches_grid(self, bpsk_victim, fixed_space):
        env = JammingEnvironment([bpsk_victim], fixed_space, RAW_SER)
        grid = fixed_space.grid(4)
        values = env.expected_rewards(grid)
        for arm in (0, 5, 11):
            assert env.expected_reward(grid.action(arm)) == pytest.approx(values[arm])

    def test_oracle_best_covers_grid(self, bpsk_victim):
        space = ActionSpace(jnr_min=1.0, jnr_max=100.0)
        env = JammingEnvironment([bpsk_victim], space, RAW_SER, oracle_m=3)
        grid = space.grid(7)
        assert env.oracle_best(grid) >= env.expected_rewards(grid).max()
        assert env.oracle_best(grid) >= env.oracle_best()

    def test_uniform_default_weights(self, bpsk_victim, fixed_space):
        env = JammingEnvironment([bpsk_victim, replace(bpsk_victim, name="b")], fixed_space, RAW_SER)
        np.testing.assert_allclose(env.weights, [0.5, 0.5])

    def test_needs_a_victim(self, fixed_space):
        with pytest.raises(ValueError):
            JammingEnvironment([], fixed_space, RAW_SER)
