"""
Epsilon-Greedy Module

Baseline policy that explores with probability epsilon0^(t/10) and otherwise
exploits the best empirical mean.
"""

import numpy as np

from bandits.base_policy import BasePolicy, argmax_lowest


def exploration_probability(t, epsilon0):
    """Exponentially decaying exploration probability epsilon0^(t/10)."""
    if not 0.0 < epsilon0 < 1.0:
        raise ValueError(f"epsilon0 must lie in (0, 1), got {epsilon0}")
    return float(epsilon0 ** (t / 10.0))


def epsilon_greedy_select(stats, t, epsilon0, rng):
    """
    Choose an arm with the decaying epsilon-greedy rule.

    Args:
        stats (Sequence[ArmStats]): Statistics of every arm.
        t (int): Step count, starting at 0.
        epsilon0 (float): Base exploration probability in (0, 1).
        rng (np.random.Generator): Exploration stream.

    Returns:
        int: A uniformly random arm with probability epsilon0^(t/10),
        otherwise the best mean (ties to the lowest identifier).
    """
    if not stats:
        raise ValueError("cannot select from an empty arm set")
    means = np.array([s.mean_reward for s in stats], dtype=float)
    return _epsilon_greedy_choice(means, t, epsilon0, rng)


def _epsilon_greedy_choice(means, t, epsilon0, rng):
    if rng.random() < exploration_probability(t, epsilon0):
        return int(rng.integers(len(means)))
    return argmax_lowest(means)


class EpsilonGreedyPolicy(BasePolicy):
    """Epsilon-greedy with exploration probability epsilon0^(t/10)."""

    name = "epsilon-greedy"

    def __init__(self, n_arms, epsilon0=0.9, rng=None):
        self.epsilon0 = epsilon0
        self.rng = rng if rng is not None else np.random.default_rng()
        exploration_probability(0, epsilon0)
        super().__init__(n_arms)

    def select(self):
        return _epsilon_greedy_choice(self.means, self.t, self.epsilon0, self.rng)
