"""
Environment Module

ACK/NACK feedback of the jammed victims. Each step realizes the victims'
strategies, simulates (or analytically samples) their packets under the
jammer's action, turns the ACK/NACK counts into PER/SER estimates and a
reward, and lets adaptive victims react at their window boundaries.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from bandits.base_policy import check_reward
from jamming.rewards import RewardKind, arm_moments, combine_expected_reward
from jamming.victims import SnrPolicy, adaptive_update, realize, state_mixture
from models.error_rates import pulsed_ser_at_phase, ser_from_per
from models.link_simulator import ChannelParams, packet_streams, simulate_packet

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_M = 100


class Fidelity(Enum):
    """How packets are produced: symbol-level Monte Carlo or analytic sampling."""

    SYMBOL = "symbol"
    ANALYTIC = "analytic"


@dataclass(frozen=True)
class Feedback:
    """Observation of one step.

    Attributes:
        acks (int): Packets received correctly, summed over victims.
        nacks (int): Packets lost, summed over victims.
        per_estimate (float): (Weighted) packet error rate of the step.
        ser_estimate (float): SER inferred from the PER by inverting the
            any-error rule.
        reward (float): Reward in [0, 1].
        symbol_error_rate (float): (Weighted) fraction of symbols in error.
        saturated (bool): True when some victim lost every packet, so the
            inferred SER is pinned to 1.
        victim_pers (tuple): PER of each victim.
    """

    acks: int
    nacks: int
    per_estimate: float
    ser_estimate: float
    reward: float
    symbol_error_rate: float = 0.0
    saturated: bool = False
    victim_pers: tuple = ()

    def __post_init__(self):
        check_reward(self.reward)


@lru_cache(maxsize=65536)
def _fixed_phase_ser(victim_scheme, jammer_scheme, snr, jnr, rho):
    return pulsed_ser_at_phase(victim_scheme, jammer_scheme, snr, jnr, rho)


def _analytic_symbol_errors(profile, state, action, rng):
    if profile.coherent or not action.scheme.is_constellation:
        ser = _fixed_phase_ser(state.scheme, action.scheme, state.snr, action.jnr, action.rho)
    else:
        phase = rng.uniform(0.0, 2.0 * math.pi)
        ser = pulsed_ser_at_phase(state.scheme, action.scheme, state.snr, action.jnr, action.rho, phase)
    return int(rng.binomial(profile.n_symbols, ser))


def observe_packets(profile, state, action, fidelity, packets, rng, streams=None):
    """
    Transmit ``packets`` packets of one victim under a jamming action.

    Args:
        profile (VictimProfile): Packet length, error rule and phase mode.
        state (VictimState): Victim strategy in effect.
        action (JammerAction): Jamming arm.
        fidelity (Fidelity): Symbol-level or analytic.
        packets (int): Number of packets.
        rng (np.random.Generator): Stream for analytic draws (and symbol
            draws when ``streams`` is None).
        streams (callable | None): Returns the PacketStreams of the next
            packet for symbol fidelity.

    Returns:
        tuple: ``(nacks, symbol_errors)``.
    """
    fidelity = Fidelity(fidelity)
    nacks = symbol_errors = 0
    for _ in range(packets):
        if fidelity is Fidelity.SYMBOL:
            outcome = simulate_packet(state.scheme, ChannelParams(state.snr, profile.coherent), action,
                                      profile.n_symbols, profile.error_rule,
                                      streams() if streams is not None else rng)
            errors = outcome.symbol_errors
        else:
            errors = _analytic_symbol_errors(profile, state, action, rng)
        nacks += profile.error_rule.is_packet_error(errors, profile.n_symbols)
        symbol_errors += errors
    return nacks, symbol_errors


def multi_victim_step(profiles, action, weights, spec, fidelity, rng, packets_per_step=1,
                      states=None, streams=None):
    """
    One step against several victims sharing the jammer's action.

    Args:
        profiles (Sequence[VictimProfile]): The victims.
        action (JammerAction): Jamming arm, received at the same JNR by all.
        weights (Sequence[float]): Probability vector combining the victims.
        spec (RewardSpec): Reward function, applied to the combined rates.
        fidelity (Fidelity): Symbol-level or analytic.
        rng (np.random.Generator): Random stream.
        packets_per_step (int): Packets per victim per step.
        states (Sequence[VictimState] | None): Pre-realized strategies.
        streams (callable | None): Per-packet streams for symbol fidelity.

    Returns:
        Feedback: Combined observation.
    """
    if not profiles:
        raise ValueError("at least one victim is required")
    if packets_per_step < 1:
        raise ValueError("packets_per_step must be at least 1")
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(profiles),) or np.any(weights < 0) or not np.isclose(weights.sum(), 1.0):
        raise ValueError("weights must be a probability vector with one entry per victim")
    if spec.kind is RewardKind.THRESHOLDED_SER and len(profiles) > 1:
        raise ValueError("thresholded-ser rewards support a single victim")
    if states is None:
        states = [realize(p, rng) for p in profiles]

    pers, sers, inferred = [], [], []
    nacks_total = 0
    saturated = False
    for profile, state in zip(profiles, states):
        nacks, errors = observe_packets(profile, state, action, fidelity, packets_per_step, rng, streams)
        per = nacks / packets_per_step
        estimate = ser_from_per(per, profile.n_symbols)
        saturated = saturated or estimate.saturated
        pers.append(per)
        sers.append(errors / (profile.n_symbols * packets_per_step))
        inferred.append(estimate.value)
        nacks_total += nacks

    per = float(np.dot(weights, pers))
    ser = float(np.dot(weights, sers))
    return Feedback(
        acks=len(profiles) * packets_per_step - nacks_total,
        nacks=nacks_total,
        per_estimate=per,
        ser_estimate=float(np.dot(weights, inferred)),
        reward=spec.reward(per, ser, action.jnr),
        symbol_error_rate=ser,
        saturated=saturated,
        victim_pers=tuple(pers),
    )


def step(profile, action, fidelity, spec, packets_per_step, rng, state=None, streams=None):
    """
    One step against a single victim.

    Returns:
        Feedback: ACK/NACK counts, PER/SER estimates and the reward.
    """
    return multi_victim_step([profile], action, [1.0], spec, fidelity, rng, packets_per_step,
                             states=None if state is None else [state], streams=streams)


def expected_rewards(profiles, weights, grid, spec, packets_per_step=1):
    """
    Exact expected reward of every arm of a grid.

    Args:
        profiles (Sequence[VictimProfile]): Victims in their current state.
        weights (Sequence[float]): Victim weights.
        grid (ActionGrid): Arms to evaluate.
        spec (RewardSpec): Reward function.
        packets_per_step (int): Packets per victim per step.

    Returns:
        np.ndarray: Expected reward per arm, averaged over iid strategy
        mixtures.
    """
    values = np.empty(len(grid))
    target = spec.target if spec.kind is RewardKind.THRESHOLDED_SER else None
    for scheme, arms, jnr, rho in grid.blocks():
        moments = [arm_moments(p, state_mixture(p), scheme, jnr, rho, packets_per_step, target)
                   for p in profiles]
        values[arms] = combine_expected_reward(spec, moments, weights, jnr)
    return values


def expected_action_reward(profiles, weights, action, spec, packets_per_step=1):
    """Exact expected reward of a single action."""
    target = spec.target if spec.kind is RewardKind.THRESHOLDED_SER else None
    moments = [arm_moments(p, state_mixture(p), action.scheme, [action.jnr], [action.rho],
                           packets_per_step, target) for p in profiles]
    return float(combine_expected_reward(spec, moments, weights, [action.jnr])[0])


class JammingEnvironment:
    """Victims, feedback channel and oracle lookups of one run.

    The environment owns the run's random stream and the adaptive victims'
    state. Expected rewards are cached per victim state, so the oracle grid is
    evaluated once per state rather than once per step.
    """

    def __init__(self, profiles, action_space, reward_spec, weights=None,
                 fidelity=Fidelity.ANALYTIC, packets_per_step=1, seed=0, rng=None,
                 oracle_m=DEFAULT_ORACLE_M):
        """
        Initialize the environment.

        Args:
            profiles (Sequence[VictimProfile]): The victims.
            action_space (ActionSpace): Jammer schemes and JNR range.
            reward_spec (RewardSpec): Reward function.
            weights (Sequence[float] | None): Victim weights, uniform if None.
            fidelity (Fidelity): Symbol-level or analytic packets.
            packets_per_step (int): Packets per victim per step.
            seed (int): Master seed of the symbol-level packet streams.
            rng (np.random.Generator | None): Stream for victim draws and
                analytic packets; derived from ``seed`` when None.
            oracle_m (int): Resolution of the grid-search oracle.
        """
        if not profiles:
            raise ValueError("at least one victim is required")
        self.profiles = list(profiles)
        self.action_space = action_space
        self.reward_spec = reward_spec
        if weights is None:
            weights = np.full(len(self.profiles), 1.0 / len(self.profiles))
        self.weights = np.asarray(weights, dtype=float)
        self.fidelity = Fidelity(fidelity)
        self.packets_per_step = int(packets_per_step)
        self.seed = int(seed)
        self.rng = rng if rng is not None else np.random.default_rng(seed)
        self.oracle_grid = action_space.grid(oracle_m, arm_budget=None)
        self.t = 0
        self._packet_index = 0
        self._histories = [[] for _ in self.profiles]
        self._version = 0
        self._cache = {}

    def _next_streams(self):
        streams = packet_streams(self.seed, self._packet_index)
        self._packet_index += 1
        return streams

    def step(self, action):
        """Play one action and advance the victims."""
        feedback = multi_victim_step(self.profiles, action, self.weights, self.reward_spec,
                                     self.fidelity, self.rng, self.packets_per_step,
                                     streams=self._next_streams)
        self.t += 1
        self._adapt(feedback.victim_pers)
        return feedback

    def _adapt(self, victim_pers):
        changed = False
        for index, profile in enumerate(self.profiles):
            if profile.policy is not SnrPolicy.ADAPTIVE:
                continue
            self._histories[index].append(victim_pers[index])
            if self.t % profile.adapt_window == 0:
                updated = adaptive_update(profile, self._histories[index], self.rng)
                self._histories[index] = []
                if updated is not profile:
                    self.profiles[index] = updated
                    changed = True
        if changed:
            self._version += 1
            self._cache.clear()

    def victim_states(self):
        """Current (scheme, SNR) of the non-iid victims, for reports."""
        return [p.current_state() for p in self.profiles if p.policy is not SnrPolicy.IID]

    def expected_rewards(self, grid):
        """Expected reward of every arm of ``grid`` under the current victims."""
        key = (self._version, grid)
        if key not in self._cache:
            self._cache[key] = expected_rewards(self.profiles, self.weights, grid,
                                                self.reward_spec, self.packets_per_step)
        return self._cache[key]

    def expected_reward(self, action):
        """Expected reward of one action under the current victims."""
        key = (self._version, action)
        if key not in self._cache:
            self._cache[key] = expected_action_reward(self.profiles, self.weights, action,
                                                      self.reward_spec, self.packets_per_step)
        return self._cache[key]

    def oracle_best(self, grid=None):
        """Best expected reward on the oracle grid and, if given, on ``grid``."""
        best = float(self.expected_rewards(self.oracle_grid).max())
        if grid is not None:
            best = max(best, float(self.expected_rewards(grid).max()))
        return best
