"""
Regret Trace Module

Time-indexed record of a learning run: the action played, the feedback it
produced, the oracle-best expected reward and the cumulative regret.
"""

import numpy as np
import pandas as pd

from utils.units import linear_to_db

CSV_COLUMNS = ("t", "scheme", "jnr_db", "rho", "reward", "per_est", "ser_est",
               "oracle_best", "cum_regret")
EXTRA_COLUMNS = ("arm", "round", "m", "expected_reward")


class RegretTrace:
    """Columnar trace of one run.

    Rows are appended one step at a time; ``to_frame`` turns the columns into
    a pandas DataFrame whose first columns follow ``CSV_COLUMNS``.
    """

    def __init__(self):
        self._columns = {name: [] for name in CSV_COLUMNS + EXTRA_COLUMNS}
        self._cumulative = 0.0

    def __len__(self):
        return len(self._columns["t"])

    def append(self, action, feedback, expected_reward, oracle_best, arm, round_index, m):
        """
        Record one step.

        Args:
            action (JammerAction): Action played.
            feedback (Feedback): What the environment returned.
            expected_reward (float): Expected reward of ``action``.
            oracle_best (float): Best expected reward available at this step.
            arm (int): Arm identifier within the round's grid.
            round_index (int): Round of the doubling schedule.
            m (int): Discretization of that round.
        """
        self._cumulative += oracle_best - expected_reward
        row = {
            "t": len(self) + 1,
            "scheme": action.scheme.value,
            "jnr_db": float(linear_to_db(action.jnr)) if action.jnr > 0 else float("-inf"),
            "rho": action.rho,
            "reward": feedback.reward,
            "per_est": feedback.per_estimate,
            "ser_est": feedback.symbol_error_rate,
            "oracle_best": oracle_best,
            "cum_regret": self._cumulative,
            "arm": int(arm),
            "round": int(round_index),
            "m": int(m),
            "expected_reward": expected_reward,
        }
        for name, value in row.items():
            self._columns[name].append(value)

    def column(self, name):
        return np.asarray(self._columns[name])

    @property
    def cumulative_regret(self):
        return self.column("cum_regret").astype(float)

    def to_frame(self):
        return pd.DataFrame(self._columns, columns=list(CSV_COLUMNS + EXTRA_COLUMNS))

    def terminal_round(self):
        """Longest round played, the latest one on ties."""
        if not len(self):
            raise ValueError("empty trace")
        rounds, counts = np.unique(self.column("round"), return_counts=True)
        longest = counts == counts.max()
        return int(rounds[longest][-1])

    def round_frame(self, round_index):
        frame = self.to_frame()
        return frame[frame["round"] == round_index]

    def terminal_modal_arm(self):
        """Most played action of the terminal round as (scheme, jnr_db, rho).

        Ties go to the lowest arm identifier.
        """
        frame = self.round_frame(self.terminal_round())
        counts = frame.groupby("arm").size()
        arm = int(counts[counts == counts.max()].index.min())
        row = frame[frame["arm"] == arm].iloc[0]
        return {"arm": arm, "scheme": row["scheme"], "jnr_db": float(row["jnr_db"]),
                "rho": float(row["rho"]), "m": int(row["m"])}

    def terminal_mean_reward(self):
        return float(self.round_frame(self.terminal_round())["reward"].mean())

    def regret_slope(self):
        """Log-log slope of cumulative regret over the last two round boundaries.

        Returns None when fewer than two complete rounds of positive regret exist.
        """
        frame = self.to_frame()
        ends = frame.groupby("round")["t"].max()
        if len(ends) < 3:
            return None
        t0, t1 = ends.iloc[-3], ends.iloc[-1]
        r0 = frame["cum_regret"].iloc[t0 - 1]
        r1 = frame["cum_regret"].iloc[t1 - 1]
        if r0 <= 0 or r1 <= 0:
            return None
        return float(np.log(r1 / r0) / np.log(t1 / t0))
