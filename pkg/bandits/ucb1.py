"""
UCB1 Module

Upper-confidence-bound selection: play every arm once, then the arm that
maximizes mean + sqrt(2 ln t / pulls).
"""

import numpy as np

from bandits.base_policy import ArmStats, BasePolicy, argmax_lowest, check_reward


def ucb1_index(means, pulls, t):
    """UCB1 indices; arms that were never played get +inf."""
    pulls = np.asarray(pulls, dtype=float)
    bonus = np.full(pulls.shape, np.inf)
    np.divide(2.0 * np.log(max(t, 1)), pulls, out=bonus, where=pulls > 0)
    return np.asarray(means, dtype=float) + np.sqrt(bonus)


def _ucb1_choice(pulls, means, t):
    unplayed = np.flatnonzero(pulls == 0)
    if unplayed.size:
        return int(unplayed[0])
    return argmax_lowest(ucb1_index(means, pulls, t))


def ucb1_select(stats, t):
    """
    Choose an arm with the UCB1 rule.

    Args:
        stats (Sequence[ArmStats]): Statistics of every arm.
        t (int): Steps played so far.

    Returns:
        int: The lowest unplayed arm if any, else the UCB1 argmax (ties to
        the lowest identifier).
    """
    if not stats:
        raise ValueError("cannot select from an empty arm set")
    pulls = np.array([s.pulls for s in stats], dtype=np.int64)
    means = np.array([s.mean_reward for s in stats], dtype=float)
    return _ucb1_choice(pulls, means, t)


def ucb1_update(stats, reward):
    """Return the arm statistics after one more reward."""
    reward = check_reward(reward)
    pulls = stats.pulls + 1
    mean = stats.mean_reward + (reward - stats.mean_reward) / pulls
    return ArmStats(pulls, mean, stats.cumulative_reward + reward)


class UCB1Policy(BasePolicy):
    """UCB1 over a fixed set of arms."""

    name = "ucb1"

    def select(self):
        return _ucb1_choice(self.pulls, self.means, self.t)

    def indices(self):
        """Current UCB1 indices; unplayed arms get +inf."""
        return ucb1_index(self.means, self.pulls, self.t)
