"""
Bounds Module

Evaluators for the learner's theoretical guarantees: regret-shape curves,
one-step and cumulative confidence bounds, the sub-optimality bookkeeping of
a finished run and the jamming-budget planner. Leading constants that the
guarantees leave unspecified are set to 1, so the curves are shapes.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from jamming.discretization import compute_m
from utils.errors import InfeasiblePlanError


@dataclass(frozen=True)
class BoundInputs:
    """Inputs shared by the bound evaluators.

    Attributes:
        horizon_or_round (int): Horizon n or round length T.
        holder (HolderParams): Hoelder parameters.
        n_mod (int): Number of jamming schemes.
        m (int): Discretization in use.
        epsilon (float): Confidence level of the cumulative bound.
        delta_min_lower (float | None): Known lower bound on the smallest gap.
    """

    horizon_or_round: int
    holder: object
    n_mod: int = 3
    m: int = 1
    epsilon: float = 0.1
    delta_min_lower: float = None

    def __post_init__(self):
        if self.horizon_or_round < 1:
            raise ValueError("horizon_or_round must be at least 1")
        if self.n_mod < 1 or self.m < 1:
            raise ValueError("n_mod and m must be at least 1")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.delta_min_lower is not None and self.delta_min_lower <= 0:
            raise ValueError("delta_min_lower must be positive")


def _check_round(round_t, minimum=2):
    if round_t < minimum:
        raise ValueError(f"round length must be at least {minimum}, got {round_t}")


def regret_curve(inputs, t):
    """N_mod t^((a+2)/(2(a+1))) (ln t)^(a/(2(a+1))), the regret shape of the learner."""
    _check_round(t)
    alpha = inputs.holder.exponent_alpha
    return inputs.n_mod * t ** ((alpha + 2) / (2 * (alpha + 1))) \
        * math.log(t) ** (alpha / (2 * (alpha + 1)))


def stochastic_regret_curve(inputs, t):
    """Regret shape against an iid victim; the same order as the static case."""
    return regret_curve(inputs, t)


def one_step_delta(round_t, holder):
    """
    One-step confidence radius of a round.

    Args:
        round_t (int): Round length T, at least 2.
        holder (HolderParams): Hoelder parameters.

    Returns:
        float: 2 * 2^((3a+2)/(2(1+a))) * L^(1/(1+a)) * (ln T / T)^(a/(2(1+a))).
    """
    _check_round(round_t)
    alpha, constant = holder.exponent_alpha, holder.constant_L
    return 2.0 * 2.0 ** ((3 * alpha + 2) / (2 * (1 + alpha))) * constant ** (1 / (1 + alpha)) \
        * (math.log(round_t) / round_t) ** (alpha / (2 * (1 + alpha)))


def one_step_failure_probability(n_mod, m, t):
    """Probability 2 (N_mod + M^2) t^-4 that the one-step radius is exceeded."""
    return 2.0 * (n_mod + m * m) * float(t) ** -4


def estimate_delta(round_t, holder):
    """Radius around the estimated best reward: twice ``one_step_delta``."""
    return 2.0 * one_step_delta(round_t, holder)


def estimate_failure_probability(n_mod, m, t):
    """Failure probability of ``estimate_delta``."""
    return one_step_failure_probability(n_mod, m, t) + float(t) ** -16


def cumulative_confidence(round_t, holder, epsilon):
    """((8 / (3 eps)) (T / ln T)^(4/(1+a)))^(1/3), exceeded with probability below eps."""
    _check_round(round_t, 3)
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    alpha = holder.exponent_alpha
    return ((8.0 / (3.0 * epsilon)) * (round_t / math.log(round_t)) ** (4.0 / (1 + alpha))) ** (1 / 3)


def confidence_m(delta, holder, round_t):
    """Smallest discretization guaranteeing a one-step radius ``delta``.

    max(ceil((2^((a+4)/2) L / delta)^(1/a)), compute_m(T)).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    alpha = holder.exponent_alpha
    needed = math.ceil((2.0 ** ((alpha + 4) / 2) * holder.constant_L / delta) ** (1 / alpha))
    return max(needed, compute_m(round_t, holder))


def bound_overlay(inputs, schemes=None):
    """
    Every bound evaluated at the inputs, as a JSON-ready dict.

    Args:
        inputs (BoundInputs): Round length, discretization and confidence.
        schemes (Sequence[str] | None): Scheme names for the per-scheme
            cumulative bound.

    Returns:
        dict: Regret shapes, radii, failure probabilities and the cumulative
        bound per scheme.
    """
    t = inputs.horizon_or_round
    holder = inputs.holder
    overlay = {
        "t": t,
        "m": inputs.m,
        "regret_curve": regret_curve(inputs, t),
        "stochastic_regret_curve": stochastic_regret_curve(inputs, t),
        "one_step_delta": one_step_delta(t, holder),
        "one_step_failure_probability": one_step_failure_probability(inputs.n_mod, inputs.m, t),
        "estimate_delta": estimate_delta(t, holder),
        "estimate_failure_probability": estimate_failure_probability(inputs.n_mod, inputs.m, t),
    }
    if t >= 3:
        value = cumulative_confidence(t, holder, inputs.epsilon)
        overlay["cumulative_confidence"] = {name: value for name in (schemes or ["all"])}
    if inputs.delta_min_lower is not None:
        overlay["confidence_m"] = confidence_m(inputs.delta_min_lower, holder, t)
    return overlay


@dataclass(frozen=True)
class AuditReport:
    """Sub-optimality bookkeeping of a sequence of pulls.

    Attributes:
        horizon (int): Number of audited steps T.
        gaps (list): Gap of every arm to the oracle best.
        suboptimal_arms (list): Arms whose gap exceeds the threshold.
        undersampled_steps (list): Steps (1-based) in U(T).
        expected_bound (float): Bound on E|U(T)|.
    """

    horizon: int
    gaps: list
    suboptimal_arms: list
    undersampled_steps: list
    expected_bound: float

    @property
    def undersampled_count(self):
        return len(self.undersampled_steps)

    def to_dict(self):
        report = asdict(self)
        report["undersampled_count"] = self.undersampled_count
        report["within_bound"] = self.undersampled_count <= self.expected_bound
        return report


def _arm_sequence(trace_or_arms, round_index=None):
    if hasattr(trace_or_arms, "column"):
        arms = trace_or_arms.column("arm")
        if round_index is not None:
            arms = arms[trace_or_arms.column("round") == round_index]
        return np.asarray(arms, dtype=int)
    return np.asarray(trace_or_arms, dtype=int)


def suboptimality_audit(trace, oracle_means, delta_threshold, round_index=None):
    """
    Find the steps where an arm with a large gap is still under-sampled.

    A step t belongs to U(T) when its arm i has gap D_i > ``delta_threshold``
    and has been pulled at most 8 ln T / D_i^2 times up to and including t.

    Args:
        trace (RegretTrace | Sequence[int]): Pulls to audit; a trace is
            restricted to ``round_index`` when given.
        oracle_means (Sequence[float]): Expected reward of every arm.
        delta_threshold (float): Gap above which an arm is in U_>.
        round_index (int | None): Round of the trace to audit.

    Returns:
        AuditReport: Gaps, U_>, U(T) and the bound
        8 sum_{U_>} ln T / D_i^2 + (1 + pi^2 / 3) |U_>|.
    """
    arms = _arm_sequence(trace, round_index)
    means = np.asarray(oracle_means, dtype=float)
    gaps = means.max() - means
    horizon = len(arms)
    suboptimal = np.flatnonzero(gaps > delta_threshold)
    log_t = math.log(horizon) if horizon > 1 else 0.0
    limits = np.full(len(means), -1.0)
    limits[suboptimal] = 8.0 * log_t / gaps[suboptimal] ** 2

    pulls = np.zeros(len(means), dtype=int)
    undersampled = []
    for step, arm in enumerate(arms, start=1):
        pulls[arm] += 1
        if pulls[arm] <= limits[arm]:
            undersampled.append(step)

    bound = float(np.sum(8.0 * log_t / gaps[suboptimal] ** 2)) \
        + (1.0 + math.pi ** 2 / 3.0) * len(suboptimal)
    return AuditReport(horizon, gaps.tolist(), suboptimal.tolist(), undersampled, bound)


@dataclass(frozen=True)
class ExceedanceReport:
    """Realized exceedances of a one-step radius outside U(T)."""

    delta: float
    steps_checked: int
    exceedances: int
    probability_bound: float

    def to_dict(self):
        report = asdict(self)
        report["within_bound"] = self.exceedances <= self.probability_bound
        return report


def one_step_exceedance(trace, oracle_means, delta, n_mod, m, audit, round_index=None):
    """
    Compare realized exceedances of ``delta`` with the summed failure probability.

    Args:
        trace (RegretTrace | Sequence[int]): Pulls, as for the audit.
        oracle_means (Sequence[float]): Expected reward of every arm.
        delta (float): One-step radius, usually ``one_step_delta``.
        n_mod (int): Number of jamming schemes.
        m (int): Discretization of the audited grid.
        audit (AuditReport): Audit of the same pulls; its U(T) is skipped.
        round_index (int | None): Round of the trace to check.

    Returns:
        ExceedanceReport: Count of steps with gap > delta, and the sum of
        2 (N_mod + M^2) t^-4 over the checked steps.
    """
    arms = _arm_sequence(trace, round_index)
    means = np.asarray(oracle_means, dtype=float)
    gaps = means.max() - means
    skipped = set(audit.undersampled_steps)
    steps = np.array([t for t in range(1, len(arms) + 1) if t not in skipped], dtype=int)
    if steps.size == 0:
        return ExceedanceReport(delta, 0, 0, 0.0)
    exceed = int(np.count_nonzero(gaps[arms[steps - 1]] > delta))
    bound = float(np.sum(2.0 * (n_mod + m * m) * steps.astype(float) ** -4))
    return ExceedanceReport(delta, int(steps.size), exceed, bound)


def plan_budget(per_achieved, packets_needed):
    """
    Packets to transmit so that ``packets_needed`` are jammed on average.

    Args:
        per_achieved (float): PER the jammer achieves, in (0, 1].
        packets_needed (int): Packets that must be lost, at least 1.

    Returns:
        int: ceil(packets_needed / per_achieved).

    Raises:
        InfeasiblePlanError: If ``per_achieved`` is 0.
    """
    if packets_needed < 1:
        raise ValueError("packets_needed must be at least 1")
    if not 0.0 <= per_achieved <= 1.0:
        raise ValueError(f"per_achieved must lie in [0, 1], got {per_achieved}")
    if per_achieved == 0.0:
        raise InfeasiblePlanError("no packet is ever jammed at PER 0")
    return math.ceil(round(packets_needed / per_achieved, 9))
