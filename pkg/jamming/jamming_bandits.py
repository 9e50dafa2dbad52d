"""
Jamming Bandits Module

The doubling-trick learner over the mixed action space. Each round of
length T = 1, 2, 4, ... recomputes the discretization M, rebuilds the action
grid and restarts the inner policy (UCB1 or UCB-Improved) from scratch.
The fixed-grid epsilon-greedy learner and the fixed-action jammer serve as
baselines over the same schedule.
"""

import logging

from bandits.epsilon_greedy import EpsilonGreedyPolicy
from bandits.ucb1 import UCB1Policy
from bandits.ucb_improved import UCBImprovedPolicy
from jamming.action_grid import DEFAULT_ARM_BUDGET
from jamming.discretization import RoundSchedule, round_discretization
from jamming.trace import RegretTrace

logger = logging.getLogger(__name__)

INNER_POLICIES = ("ucb1", "ucb-improved")


def make_inner_policy(inner, n_arms, round_length):
    """Fresh inner policy for one round."""
    if inner == "ucb1":
        return UCB1Policy(n_arms)
    if inner == "ucb-improved":
        return UCBImprovedPolicy(n_arms, round_length)
    raise ValueError(f"Unknown inner policy {inner!r} (expected one of {', '.join(INNER_POLICIES)})")


def play_step(env, trace, grid, arm, round_index):
    """Play one grid arm, record it and return the feedback."""
    action = grid[arm]
    expected = env.expected_rewards(grid)[arm]
    oracle_best = env.oracle_best(grid)
    feedback = env.step(action)
    trace.append(action, feedback, float(expected), oracle_best, arm, round_index, grid.m)
    return feedback


def jb_run(env, horizon, holder, inner="ucb1", rng=None, arm_budget=DEFAULT_ARM_BUDGET,
           trace=None, first_round=0, on_round_end=None):
    """
    Run Jamming Bandits for ``horizon`` steps.

    Args:
        env (JammingEnvironment): Victims and feedback channel.
        horizon (int): Number of steps n.
        holder (HolderParams): Hoelder parameters driving M.
        inner (str): ``"ucb1"`` or ``"ucb-improved"``.
        rng (np.random.Generator | None): Unused by the deterministic inner
            policies; accepted for a uniform runner signature.
        arm_budget (int | None): Largest grid a round may build.
        trace (RegretTrace | None): Trace to continue when resuming.
        first_round (int): First round to play when resuming.
        on_round_end (callable | None): Called as ``on_round_end(round, trace)``
            after every round, e.g. to checkpoint.

    Returns:
        RegretTrace: One row per step.

    Raises:
        ArmBudgetError: If a round's grid exceeds ``arm_budget``.
    """
    if inner not in INNER_POLICIES:
        raise ValueError(f"Unknown inner policy {inner!r}")
    trace = trace if trace is not None else RegretTrace()
    for current in RoundSchedule(horizon).rounds(first_round):
        m = round_discretization(current.length, holder, inner)
        grid = env.action_space.grid(m, arm_budget)
        policy = make_inner_policy(inner, len(grid), current.length)
        logger.info("round %d: T=%d, M=%d, %d arms (%s)", current.index, current.length, m,
                    len(grid), inner)
        for _ in range(current.length):
            arm = policy.select()
            feedback = play_step(env, trace, grid, arm, current.index)
            policy.update(arm, feedback.reward)
        if on_round_end is not None:
            on_round_end(current, trace)
    return trace


def epsilon_greedy_run(env, horizon, m, epsilon0=0.9, rng=None, arm_budget=DEFAULT_ARM_BUDGET):
    """
    Epsilon-greedy over a fixed grid of resolution ``m`` for the whole horizon.

    The doubling schedule only labels rounds in the trace; the policy is
    never restarted, so a run cannot resume from a round boundary.
    """
    trace = RegretTrace()
    grid = env.action_space.grid(m, arm_budget)
    policy = EpsilonGreedyPolicy(len(grid), epsilon0, rng)
    for current in RoundSchedule(horizon).rounds():
        for _ in range(current.length):
            arm = policy.select()
            feedback = play_step(env, trace, grid, arm, current.index)
            policy.update(arm, feedback.reward)
    return trace


def fixed_action_run(env, horizon, action, trace=None, first_round=0, on_round_end=None):
    """Play one action throughout, e.g. continuous AWGN jamming at full power."""
    trace = trace if trace is not None else RegretTrace()
    for current in RoundSchedule(horizon).rounds(first_round):
        for _ in range(current.length):
            expected = env.expected_reward(action)
            oracle_best = max(env.oracle_best(), expected)
            feedback = env.step(action)
            trace.append(action, feedback, expected, oracle_best, 0, current.index, 1)
        if on_round_end is not None:
            on_round_end(current, trace)
    return trace
