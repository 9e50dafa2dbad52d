"""
Discretization Module

Round schedule of the doubling trick and the per-round discretization M,
either from the closed-form UCB1 balance or from the numerical root of the
arm-elimination balance.
"""

import logging
import math
import warnings
from dataclasses import dataclass

from scipy.optimize import bisect

from utils.errors import DiscretizationWarning

logger = logging.getLogger(__name__)

ROOT_BRACKET = (2.0, 1e6)
MIN_ELIMINATION_ROUND = 4


@dataclass(frozen=True)
class Round:
    """One round of the doubling schedule, covering steps [start, stop)."""

    index: int
    start: int
    length: int

    @property
    def stop(self):
        return self.start + self.length


@dataclass(frozen=True)
class RoundSchedule:
    """Rounds of length 1, 2, 4, ... truncated at the horizon."""

    horizon: int

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {self.horizon}")

    def rounds(self, first=0):
        """Yield the rounds from index ``first`` on."""
        index, start = 0, 0
        while start < self.horizon:
            length = min(2 ** index, self.horizon - start)
            if index >= first:
                yield Round(index, start, length)
            start += length
            index += 1

    def boundaries(self):
        """Cumulative step counts at which rounds end."""
        return [r.stop for r in self.rounds()]

    def round_of(self, step):
        """Round index of a zero-based step."""
        if not 0 <= step < self.horizon:
            raise ValueError("step outside the horizon")
        return (step + 1).bit_length() - 1


def compute_m(round_length, holder):
    """
    Discretization of a UCB1 round.

    Args:
        round_length (int): Length T of the round.
        holder (HolderParams): Hoelder constant L and exponent alpha.

    Returns:
        int: ceil((sqrt(T / ln T) * L * 2^(alpha/2))^(1/(1+alpha))), and 1 for
        rounds of length 1 or 2.
    """
    if round_length < 1:
        raise ValueError("round_length must be at least 1")
    if round_length <= 2:
        return 1
    alpha = holder.exponent_alpha
    base = math.sqrt(round_length / math.log(round_length)) * holder.constant_L * 2.0 ** (alpha / 2.0)
    if base <= 0:
        return 1
    return max(1, math.ceil(base ** (1.0 / (1.0 + alpha))))


def elimination_residual(m, round_length, holder):
    """Balance between discretization and elimination regret at resolution m.

    T L (2/M^2)^(alpha/2) - sqrt(M^2 T) log(M^2 log M^2) / sqrt(log M^2); it
    decreases strictly in M.
    """
    alpha = holder.exponent_alpha
    m2 = m * m
    log_m2 = math.log(m2)
    discretization = round_length * holder.constant_L * (2.0 / m2) ** (alpha / 2.0)
    elimination = math.sqrt(m2 * round_length) * math.log(m2 * log_m2) / math.sqrt(log_m2)
    return discretization - elimination


def compute_m_elimination(round_length, holder):
    """
    Discretization of an arm-elimination round.

    Args:
        round_length (int): Length T of the round, at least 4.
        holder (HolderParams): Hoelder constant L and exponent alpha.

    Returns:
        int: Ceiling of the root of ``elimination_residual`` on [2, 10^6],
        or 2 (with a DiscretizationWarning) when the bracket holds no root.
    """
    if round_length < MIN_ELIMINATION_ROUND:
        raise ValueError(f"round_length must be at least {MIN_ELIMINATION_ROUND}")
    low, high = ROOT_BRACKET
    f_low = elimination_residual(low, round_length, holder)
    f_high = elimination_residual(high, round_length, holder)
    if f_low <= 0 or f_high >= 0:
        warnings.warn(
            f"elimination balance has no root in [{low:g}, {high:g}] for T={round_length}, "
            f"L={holder.constant_L}; using M=2",
            DiscretizationWarning, stacklevel=2)
        return 2
    root = bisect(elimination_residual, low, high, args=(round_length, holder), xtol=1e-9)
    return max(2, math.ceil(root))


def round_discretization(round_length, holder, inner="ucb1"):
    """M for a round of the given inner policy; short rounds use M = 1."""
    if inner == "ucb1":
        return compute_m(round_length, holder)
    if round_length < MIN_ELIMINATION_ROUND:
        return 1
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DiscretizationWarning)
        m = compute_m_elimination(round_length, holder)
    for warning in caught:
        logger.debug("%s", warning.message)
    return m
