"""
Base Policy Class

This module contains the BasePolicy class, which keeps the per-arm counters
shared by every finite-armed bandit policy, and the ArmStats record used by
the functional selection rules.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArmStats:
    """Statistics of one arm.

    Attributes:
        pulls (int): Number of times the arm was played.
        mean_reward (float): Running mean of its rewards.
        cumulative_reward (float): Sum of its rewards.
    """

    pulls: int = 0
    mean_reward: float = 0.0
    cumulative_reward: float = 0.0

    def __post_init__(self):
        if self.pulls < 0:
            raise ValueError("pulls must be nonnegative")


class StatsView(Sequence):
    """Read-only ArmStats view over a policy's counters."""

    def __init__(self, policy):
        self._policy = policy

    def __len__(self):
        return self._policy.n_arms

    def __getitem__(self, arm):
        pulls = int(self._policy.pulls[arm])
        total = float(self._policy.sums[arm])
        return ArmStats(pulls, total / pulls if pulls else 0.0, total)


def check_reward(reward):
    """Reject rewards outside [0, 1]; they indicate an unnormalized cost upstream."""
    if not 0.0 <= reward <= 1.0:
        raise ValueError(f"reward must lie in [0, 1], got {reward}")
    return float(reward)


def argmax_lowest(values):
    """Index of the largest value, ties resolved to the lowest index."""
    return int(np.argmax(values))


class BasePolicy:
    """Base class for all bandit policies."""

    name = "base"

    def __init__(self, n_arms):
        """
        Initialize the counters.

        Args:
            n_arms (int): Number of arms, at least 1.
        """
        if n_arms < 1:
            raise ValueError("a policy needs at least one arm")
        self.n_arms = int(n_arms)
        self.reset()

    def reset(self):
        """Forget all observations."""
        self.pulls = np.zeros(self.n_arms, dtype=np.int64)
        self.sums = np.zeros(self.n_arms, dtype=float)
        self.t = 0

    @property
    def means(self):
        return np.divide(self.sums, np.maximum(self.pulls, 1))

    def select(self):
        """
        Choose the next arm to play.

        Returns:
            int: Arm identifier in ``range(n_arms)``.
        """
        raise NotImplementedError

    def update(self, arm, reward):
        """
        Record the reward observed for an arm.

        Args:
            arm (int): Arm that was played.
            reward (float): Observed reward in [0, 1].
        """
        reward = check_reward(reward)
        self.pulls[arm] += 1
        self.sums[arm] += reward
        self.t += 1

    def stats(self):
        """Snapshot of the counters as ArmStats records."""
        return list(StatsView(self))

    def best_arm(self):
        """Arm with the highest empirical mean."""
        return argmax_lowest(self.means)
