"""
Grid-Search Oracle

Exhaustive expected-reward evaluation over a fine action grid: the benchmark
against which regret is measured and the reference optimum of a scenario.
"""

import logging
from dataclasses import dataclass

import numpy as np

from bandits.base_policy import argmax_lowest
from jamming.environment import expected_rewards

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    """Expected reward of every grid arm and the best one.

    Attributes:
        grid (ActionGrid): Evaluated grid.
        means (np.ndarray): Expected reward per arm.
        best_arm (int): Argmax, ties to the lowest identifier.
    """

    grid: object
    means: np.ndarray
    best_arm: int

    @property
    def best_action(self):
        return self.grid.action(self.best_arm)

    @property
    def best_reward(self):
        return float(self.means[self.best_arm])

    def top(self, count=5):
        """The ``count`` best arms, best first."""
        order = np.argsort(-self.means, kind="stable")[:count]
        return [dict(self.grid.describe(int(arm)), expected_reward=float(self.means[arm]))
                for arm in order]

    def to_dict(self, count=5):
        return {
            "grid_m": self.grid.m,
            "n_arms": len(self.grid),
            "best": dict(self.grid.describe(self.best_arm), expected_reward=self.best_reward),
            "top": self.top(count),
        }


def grid_oracle(config, grid_m):
    """
    Evaluate every arm of a resolution-``grid_m`` grid for a configuration.

    Args:
        config (ExperimentConfig): Victims (in their initial state), jammer
            action space and reward.
        grid_m (int): Grid resolution, at least 2.

    Returns:
        OracleResult: Expected rewards and the argmax.
    """
    if grid_m < 2:
        raise ValueError(f"grid_m must be at least 2, got {grid_m}")
    grid = config.action_space.grid(grid_m, arm_budget=None)
    means = expected_rewards(config.victims, config.victim_weights, grid, config.reward,
                             config.packets_per_step)
    best = argmax_lowest(means)
    logger.info("oracle over %d arms (M=%d): best %s", len(grid), grid_m, grid.action(best).label())
    return OracleResult(grid, means, best)
