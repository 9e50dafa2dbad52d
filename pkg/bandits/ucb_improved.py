"""
UCB-Improved Module

Successive arm elimination: rounds m = 0, 1, ... play every active arm
n_m = ceil(2 log(T d_m^2) / d_m^2) times, then drop arms whose upper
confidence bound falls below the best lower bound and halve d_m. Once a
single arm survives it is played until the horizon.
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from bandits.base_policy import BasePolicy, StatsView, argmax_lowest

logger = logging.getLogger(__name__)

INITIAL_DELTA_TILDE = 1.0


def elimination_quota(horizon, delta_tilde):
    """Per-arm pulls of one elimination round, clamped to at least 1."""
    product = horizon * delta_tilde ** 2
    if product <= 1.0:
        logger.debug("quota log term nonpositive (T*d^2=%.4g), clamping n_m to 1", product)
        return 1
    return max(1, math.ceil(2.0 * math.log(product) / delta_tilde ** 2))


def max_elimination_rounds(horizon):
    """Last round index floor(0.5 * log2(T / e)), never negative."""
    if horizon <= math.e:
        return 0
    return max(0, math.floor(0.5 * math.log2(horizon / math.e)))


@dataclass(frozen=True)
class EliminationState:
    """Progress of the elimination schedule.

    Attributes:
        round_m (int): Current round.
        delta_tilde (float): Current gap guess, halved every round.
        active_set (tuple): Surviving arm identifiers, ascending.
        per_round_quota (int): Pulls each active arm receives this round.
        round_pulls (tuple): Pulls of each active arm within this round,
            aligned with ``active_set``.
        exploiting (bool): True once the round limit has passed; the best
            surviving mean is then played.
    """

    round_m: int
    delta_tilde: float
    active_set: tuple
    per_round_quota: int
    round_pulls: tuple
    exploiting: bool = False

    def __post_init__(self):
        if not self.active_set:
            raise ValueError("active set must not be empty")
        if len(self.round_pulls) != len(self.active_set):
            raise ValueError("round_pulls must align with active_set")

    @property
    def round_complete(self):
        return all(p >= self.per_round_quota for p in self.round_pulls)


def initial_elimination_state(n_arms, horizon, delta_tilde=INITIAL_DELTA_TILDE):
    """State at the start of round 0 with every arm active."""
    if n_arms < 1:
        raise ValueError("a policy needs at least one arm")
    return EliminationState(
        round_m=0,
        delta_tilde=delta_tilde,
        active_set=tuple(range(n_arms)),
        per_round_quota=elimination_quota(horizon, delta_tilde),
        round_pulls=(0,) * n_arms,
    )


def confidence_width(horizon, delta_tilde, quota):
    """Half-width sqrt(log(T d^2) / (2 n_m)) of the elimination test."""
    return math.sqrt(max(math.log(horizon * delta_tilde ** 2), 0.0) / (2.0 * quota))


def eliminate(state, stats, horizon):
    """Close the current round: drop dominated arms and halve the gap guess.

    Args:
        state (EliminationState): State whose round quotas are met.
        stats (Sequence[ArmStats]): Statistics of every arm.
        horizon (int): Horizon T of the schedule.

    Returns:
        EliminationState: State for the next round.
    """
    active = state.active_set
    means = np.array([stats[arm].mean_reward for arm in active], dtype=float)
    width = confidence_width(horizon, state.delta_tilde, state.per_round_quota)
    keep = means + width >= np.max(means - width)
    survivors = tuple(arm for arm, kept in zip(active, keep) if kept)
    if len(survivors) < len(active):
        logger.debug("round %d eliminated %d of %d arms", state.round_m,
                     len(active) - len(survivors), len(active))

    next_round = state.round_m + 1
    delta_tilde = state.delta_tilde / 2.0
    return EliminationState(
        round_m=next_round,
        delta_tilde=delta_tilde,
        active_set=survivors,
        per_round_quota=elimination_quota(horizon, delta_tilde),
        round_pulls=(0,) * len(survivors),
        exploiting=next_round > max_elimination_rounds(horizon),
    )


def ucb_improved_step(state, stats, horizon):
    """
    Choose the next arm of the elimination schedule.

    Args:
        state (EliminationState): Current schedule state.
        stats (Sequence[ArmStats]): Statistics of every arm.
        horizon (int): Horizon T of the schedule.

    Returns:
        tuple: ``(arm, state)``, where ``state`` has advanced past an
        elimination when the previous round was complete. Record the pull
        with ``record_pull`` once the reward is observed.
    """
    if len(state.active_set) == 1:
        return state.active_set[0], state
    if not state.exploiting and state.round_complete:
        state = eliminate(state, stats, horizon)
        if len(state.active_set) == 1:
            return state.active_set[0], state
    if state.exploiting:
        means = [stats[arm].mean_reward for arm in state.active_set]
        return state.active_set[argmax_lowest(means)], state
    # round robin: fewest pulls this round, lowest identifier first
    return state.active_set[int(np.argmin(state.round_pulls))], state


def record_pull(state, arm):
    """Count one pull of ``arm`` toward the current round."""
    if arm not in state.active_set:
        return state
    position = state.active_set.index(arm)
    pulls = list(state.round_pulls)
    pulls[position] += 1
    return replace(state, round_pulls=tuple(pulls))


class UCBImprovedPolicy(BasePolicy):
    """UCB-Improved over a fixed set of arms and a known horizon."""

    name = "ucb-improved"

    def __init__(self, n_arms, horizon, delta_tilde=INITIAL_DELTA_TILDE):
        if horizon < 1:
            raise ValueError("horizon must be at least 1")
        self.horizon = int(horizon)
        self.delta_tilde = delta_tilde
        super().__init__(n_arms)

    def reset(self):
        super().reset()
        self.state = initial_elimination_state(self.n_arms, self.horizon, self.delta_tilde)

    @property
    def active_set(self):
        return self.state.active_set

    def select(self):
        arm, self.state = ucb_improved_step(self.state, StatsView(self), self.horizon)
        return arm

    def update(self, arm, reward):
        super().update(arm, reward)
        self.state = record_pull(self.state, arm)
