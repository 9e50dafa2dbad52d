"""Tests for reward functions and their exact expectations."""

from dataclasses import replace

import numpy as np
import pytest
from scipy.stats import binom

from jamming.rewards import (ArmMoments, RewardKind, RewardSpec, arm_moments, binomial_hinge,
                             combine_expected_reward)
from jamming.victims import state_mixture
from models.error_rates import per_from_ser, pulsed_ser_at_phase
from models.modulation import ModulationScheme

JNR = 10.0
RHOS = np.array([0.05, 0.3, 1.0])


class TestRewardSpec:
    """Parsing and per-observation rewards."""

    @pytest.mark.parametrize("text, kind, target", [
        ("raw-ser", RewardKind.RAW_SER, None),
        ("RAW-PER", RewardKind.RAW_PER, None),
        ("thresholded-per:0.8", RewardKind.THRESHOLDED_PER, 0.8),
        ("thresholded-ser-per-jnr:0.1", RewardKind.THRESHOLDED_SER, 0.1),
    ])
    def test_parse(self, text, kind, target):
        spec = RewardSpec.parse(text)
        assert spec.kind is kind
        assert spec.target == target

    @pytest.mark.parametrize("text", ["thresholded-per", "thresholded-per:1.5", "ser", "raw-ser:x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            RewardSpec.parse(text)

    def test_raw_kinds_drop_target(self):
        assert RewardSpec(RewardKind.RAW_SER, 0.5).target is None

    def test_str_round_trips(self):
        assert str(RewardSpec.parse("thresholded-per:0.8")) == "thresholded-per:0.8"

    def test_raw_rewards(self):
        assert RewardSpec.parse("raw-ser").reward(0.4, 0.1, JNR) == 0.1
        assert RewardSpec.parse("raw-per").reward(0.4, 0.1, JNR) == 0.4

    def test_hinge_below_target_is_zero(self):
        assert RewardSpec.parse("thresholded-per:0.8").reward(0.8, 0.5, JNR) == 0.0

    def test_hinge_scaled_by_jnr(self):
        spec = RewardSpec.parse("thresholded-per:0.5")
        assert spec.reward(1.0, 0.0, JNR) == pytest.approx(0.05)
        assert spec.reward(1.0, 0.0, 1.0) == pytest.approx(0.5)


class TestBinomialHinge:
    """Closed form against direct summation."""

    @pytest.mark.parametrize("n, threshold", [(20, 0.1), (50, 0.37), (7, 0.0), (30, 0.1)])
    def test_matches_brute_force(self, n, threshold):
        p = np.array([0.05, 0.3, 0.7])
        counts = np.arange(n + 1)
        expected = (binom.pmf(counts[None, :], n, p[:, None])
                    * np.maximum(counts / n - threshold, 0.0)).sum(axis=1)
        np.testing.assert_allclose(binomial_hinge(n, p, threshold), expected, atol=1e-12)

    def test_zero_error_probability(self):
        assert binomial_hinge(100, 0.0, 0.1) == pytest.approx(0.0)


class TestArmMoments:
    """Expected observables per arm."""

    def test_coherent_matches_fixed_phase(self, bpsk_victim):
        moments = arm_moments(bpsk_victim, state_mixture(bpsk_victim), ModulationScheme.BPSK,
                              np.full(3, JNR), RHOS, packets=1)
        ser = pulsed_ser_at_phase(ModulationScheme.BPSK, ModulationScheme.BPSK, 100.0, JNR, RHOS)
        np.testing.assert_allclose(moments.ser, ser)
        np.testing.assert_allclose(moments.per, per_from_ser(ser, 1000, bpsk_victim.error_rule))

    def test_nack_pmf_is_binomial(self, bpsk_victim):
        moments = arm_moments(bpsk_victim, state_mixture(bpsk_victim), ModulationScheme.AWGN,
                              np.full(3, JNR), RHOS, packets=3)
        np.testing.assert_allclose(moments.nack_pmf.sum(axis=1), 1.0)
        np.testing.assert_allclose(moments.nack_pmf[:, 3], moments.per ** 3)

    def test_noncoherent_averages_over_phase(self, bpsk_victim):
        victim = replace(bpsk_victim, coherent=False)
        moments = arm_moments(victim, state_mixture(victim), ModulationScheme.BPSK,
                              [JNR], [0.3], packets=1)
        phases = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
        ser = pulsed_ser_at_phase(ModulationScheme.BPSK, ModulationScheme.BPSK, 100.0, JNR, 0.3, phases)
        assert moments.ser[0] == pytest.approx(ser.mean(), rel=1e-3)

    def test_ser_hinge_only_with_target(self, bpsk_victim):
        mixture = state_mixture(bpsk_victim)
        assert arm_moments(bpsk_victim, mixture, "bpsk", [JNR], [0.3], 1).ser_hinge is None
        assert arm_moments(bpsk_victim, mixture, "bpsk", [JNR], [0.3], 1, 0.01).ser_hinge.shape == (1,)


def moments_for(per, ser=0.0):
    per = np.atleast_1d(float(per))
    pmf = np.stack([1.0 - per, per], axis=1)
    return ArmMoments(np.full_like(per, ser), per, pmf)


class TestCombineExpectedReward:
    """Weighted combination over victims."""

    def test_raw_ser_is_weighted_mean(self):
        spec = RewardSpec.parse("raw-ser")
        value = combine_expected_reward(spec, [moments_for(0.0, 0.2), moments_for(0.0, 0.6)],
                                        [0.25, 0.75], [JNR])
        np.testing.assert_allclose(value, [0.5])

    def test_single_victim_hinge(self):
        spec = RewardSpec.parse("thresholded-per:0.8")
        np.testing.assert_allclose(combine_expected_reward(spec, [moments_for(0.5)], [1.0], [2.0]), [0.05])

    def test_two_victim_hinge_enumerates_nacks(self):
        spec = RewardSpec.parse("thresholded-per:0.4")
        value = combine_expected_reward(spec, [moments_for(0.5), moments_for(0.2)], [0.5, 0.5], [1.0])
        # (1,0): 0.4 * 0.1, (0,1): 0.1 * 0.1, (1,1): 0.1 * 0.6
        np.testing.assert_allclose(value, [0.11])

    def test_thresholded_ser_single_victim_only(self):
        spec = RewardSpec.parse("thresholded-ser:0.1")
        with pytest.raises(ValueError):
            combine_expected_reward(spec, [moments_for(0.5), moments_for(0.5)], [0.5, 0.5], [1.0])

    def test_needs_a_victim(self):
        with pytest.raises(ValueError):
            combine_expected_reward(RewardSpec(), [], [], [1.0])
