"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from harness.config import AlgorithmSpec, ExperimentConfig
from jamming.action_grid import ActionSpace
from jamming.rewards import RewardSpec
from jamming.victims import SnrPolicy, VictimProfile
from models.error_rates import HolderParams
from models.modulation import ModulationScheme
from utils.units import db_to_linear

FIXED_JNR = db_to_linear(10.0)


@pytest.fixture
def rng():
    """Seeded generator for each test."""
    return np.random.default_rng(2024)


@pytest.fixture
def unit_holder():
    return HolderParams(1.0, 1.0)


@pytest.fixture
def bpsk_victim():
    """Static coherent BPSK victim at 20 dB."""
    return VictimProfile(policy=SnrPolicy.STATIC, schemes=(ModulationScheme.BPSK,), snr=100.0,
                         snr_range=(1.0, 100.0), n_symbols=1000)


@pytest.fixture
def weak_victim():
    """Static BPSK victim at 0 dB: large reward gaps between arms."""
    return VictimProfile(policy=SnrPolicy.STATIC, schemes=(ModulationScheme.BPSK,), snr=1.0,
                         snr_range=(1.0, 100.0), n_symbols=1000)


@pytest.fixture
def fixed_space():
    """All three jamming schemes at a fixed 10 dB JNR."""
    return ActionSpace(jnr_min=FIXED_JNR, jnr_max=FIXED_JNR)


@pytest.fixture
def small_config(bpsk_victim, fixed_space):
    """A short static scenario that runs in well under a second per seed."""
    return ExperimentConfig(
        scenario="unit", victims=(bpsk_victim,), action_space=fixed_space,
        reward=RewardSpec("raw-ser"), algorithm=AlgorithmSpec("jb-ucb1"), horizon=64,
        seeds=(0, 1), oracle_m=10,
    ).validate()
