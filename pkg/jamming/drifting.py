"""
Drifting Module

Sliding-window Jamming Bandits for victims whose strategy changes over time.
Inside every round, frames of W steps start every W/2 steps. A frame's first
half is its passive slot: actions still follow the previous frame's UCB1
indices while the new frame collects its own statistics from zero. In its
second half (the active slot) the frame takes over. The first frame of a
round is active from its first step.
"""

import logging
from collections import deque

from bandits.ucb1 import UCB1Policy
from jamming.action_grid import DEFAULT_ARM_BUDGET
from jamming.discretization import RoundSchedule, compute_m
from jamming.jamming_bandits import play_step
from jamming.trace import RegretTrace

logger = logging.getLogger(__name__)


def check_window(window_w):
    if window_w < 2 or window_w % 2:
        raise ValueError(f"window_w must be an even number of at least 2, got {window_w}")
    return int(window_w)


class DriftingFrames:
    """Overlapping UCB1 frames of one round."""

    def __init__(self, n_arms, window_w):
        self.n_arms = n_arms
        self.half = check_window(window_w) // 2
        self.frames = deque([UCB1Policy(n_arms)])
        self.offset = 0
        self.frame_index = 0

    @property
    def acting(self):
        """Frame whose indices choose the action: the oldest live frame."""
        return self.frames[0]

    def select(self):
        if self.offset and self.offset % self.half == 0:
            self.frames.append(UCB1Policy(self.n_arms))
            self.frame_index += 1
            if len(self.frames) > 2:
                self.frames.popleft()
        return self.acting.select()

    def update(self, arm, reward):
        for frame in self.frames:
            frame.update(arm, reward)
        self.offset += 1


def jb_drifting_run(env, horizon, holder, window_w, rng=None, arm_budget=DEFAULT_ARM_BUDGET,
                    trace=None, first_round=0, on_round_end=None):
    """
    Run drifting Jamming Bandits for ``horizon`` steps.

    Args:
        env (JammingEnvironment): Victims and feedback channel.
        horizon (int): Number of steps n.
        holder (HolderParams): Hoelder parameters driving M.
        window_w (int): Frame length W, even.
        rng (np.random.Generator | None): Accepted for a uniform runner
            signature.
        arm_budget (int | None): Largest grid a round may build.
        trace (RegretTrace | None): Trace to continue when resuming.
        first_round (int): First round to play when resuming.
        on_round_end (callable | None): Called after every round.

    Returns:
        RegretTrace: One row per step. With W >= 2 * horizon no second frame
        ever starts and the run matches ``jb_run`` with UCB1.
    """
    check_window(window_w)
    trace = trace if trace is not None else RegretTrace()
    for current in RoundSchedule(horizon).rounds(first_round):
        # M stays fixed within the round; frames restart with it
        m = compute_m(current.length, holder)
        grid = env.action_space.grid(m, arm_budget)
        frames = DriftingFrames(len(grid), window_w)
        logger.info("round %d: T=%d, M=%d, %d arms, W=%d", current.index, current.length, m,
                    len(grid), window_w)
        for _ in range(current.length):
            arm = frames.select()
            feedback = play_step(env, trace, grid, arm, current.index)
            frames.update(arm, feedback.reward)
        if on_round_end is not None:
            on_round_end(current, trace)
    return trace
