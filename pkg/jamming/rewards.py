"""
Rewards Module

Reward functions built from the ACK/NACK feedback and their exact
expectations under the analytic feedback model. The expectations drive the
grid-search oracle and the regret accounting.
"""

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import binom

from models.error_rates import per_from_ser, phase_nodes, pulsed_ser_at_phase
from models.modulation import ModulationScheme

_CHUNK = 256
MAX_NACK_COMBINATIONS = 4096


class RewardKind(Enum):
    """Reward functions available to the jammer."""

    RAW_SER = "raw-ser"
    RAW_PER = "raw-per"
    THRESHOLDED_PER = "thresholded-per"
    THRESHOLDED_SER = "thresholded-ser"


_ALIASES = {
    "thresholded-per-per-jnr": RewardKind.THRESHOLDED_PER,
    "thresholded-ser-per-jnr": RewardKind.THRESHOLDED_SER,
}


@dataclass(frozen=True)
class RewardSpec:
    """Reward function and, for the hinge kinds, its target error rate.

    Attributes:
        kind (RewardKind): Which error rate is rewarded and how.
        target (float | None): Target error rate in (0, 1) for the
            thresholded kinds, which reward max(rate - target, 0) / JNR.
    """

    kind: RewardKind = RewardKind.RAW_SER
    target: float = None

    def __post_init__(self):
        kind = self.kind
        if not isinstance(kind, RewardKind):
            text = str(kind).strip().lower()
            kind = _ALIASES.get(text) or RewardKind(text)
            object.__setattr__(self, "kind", kind)
        if self.is_thresholded:
            if self.target is None or not 0.0 < self.target < 1.0:
                raise ValueError(f"{kind.value} needs a target in (0, 1), got {self.target}")
        elif self.target is not None:
            object.__setattr__(self, "target", None)

    @classmethod
    def parse(cls, text):
        """Parse ``raw-ser``, ``raw-per``, ``thresholded-per:0.8`` or ``thresholded-ser:0.1``."""
        if isinstance(text, cls):
            return text
        name, _, target = str(text).strip().lower().partition(":")
        try:
            return cls(name, float(target) if target else None)
        except ValueError as exc:
            raise ValueError(f"Invalid reward {text!r}: {exc}") from None

    @property
    def is_thresholded(self):
        return self.kind in (RewardKind.THRESHOLDED_PER, RewardKind.THRESHOLDED_SER)

    def __str__(self):
        if self.is_thresholded:
            return f"{self.kind.value}:{self.target:g}"
        return self.kind.value

    def reward(self, per, ser, jnr):
        """
        Reward of one observation.

        Args:
            per (float): Observed packet error rate.
            ser (float): Observed symbol error rate.
            jnr (float): Average JNR of the action (linear).

        Returns:
            float: The reward; in [0, 1] whenever jnr >= 1.
        """
        if self.kind is RewardKind.RAW_SER:
            return float(ser)
        if self.kind is RewardKind.RAW_PER:
            return float(per)
        rate = per if self.kind is RewardKind.THRESHOLDED_PER else ser
        return max(rate - self.target, 0.0) / jnr


def binomial_hinge(n, p, threshold):
    """E[max(X/n - threshold, 0)] for X ~ Binomial(n, p), elementwise in p."""
    p = np.asarray(p, dtype=float)
    a = round(threshold * n, 9)
    k = np.floor(a) + 1
    # E[X 1{X >= k}] = n p P(Binomial(n - 1, p) >= k - 1)
    upper = n * p * binom.sf(k - 2, n - 1, p) - a * binom.sf(k - 1, n, p)
    return np.clip(upper / n, 0.0, None)


@dataclass
class ArmMoments:
    """Expected per-step observables of a block of arms against one victim.

    Attributes:
        ser (np.ndarray): Expected symbol error rate.
        per (np.ndarray): Expected packet error probability.
        nack_pmf (np.ndarray): Distribution of the NACK count of one step,
            shape (arms, packets + 1).
        ser_hinge (np.ndarray | None): E[max(SER - target, 0)] of one step.
    """

    ser: np.ndarray
    per: np.ndarray
    nack_pmf: np.ndarray
    ser_hinge: np.ndarray = None


def arm_moments(profile, mixture, jammer, jnr, rho, packets, ser_target=None):
    """
    Expected observables of arms (one jamming scheme) against a victim.

    Args:
        profile (VictimProfile): Packet length, error rule and phase mode.
        mixture (list): ``(VictimState, weight)`` pairs to average over.
        jammer (ModulationScheme): Jamming scheme of every arm.
        jnr (np.ndarray): Average JNR per arm.
        rho (np.ndarray): Pulse ratio per arm.
        packets (int): Packets per step.
        ser_target (float | None): Target of a thresholded-ser reward.

    Returns:
        ArmMoments: Averaged over the mixture and, when the link is not
        coherent, over the packet phase offset.
    """
    jammer = ModulationScheme.parse(jammer)
    jnr = np.atleast_1d(np.asarray(jnr, dtype=float))
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    n_arms = jnr.size
    ser = np.zeros(n_arms)
    per = np.zeros(n_arms)
    pmf = np.zeros((n_arms, packets + 1))
    hinge = np.zeros(n_arms) if ser_target is not None else None
    if profile.coherent or not jammer.is_constellation:
        phases = np.zeros(1)
    else:
        phases = phase_nodes()
    counts = np.arange(packets + 1)

    for state, weight in mixture:
        for start in range(0, n_arms, _CHUNK):
            block = slice(start, start + _CHUNK)
            table = pulsed_ser_at_phase(state.scheme, jammer, state.snr, jnr[block, None],
                                        rho[block, None], phases[None, :])
            table = np.atleast_2d(table)
            ser[block] += weight * table.mean(axis=-1)
            p = np.atleast_2d(per_from_ser(table, profile.n_symbols, profile.error_rule)).mean(axis=-1)
            per[block] += weight * p
            pmf[block] += weight * binom.pmf(counts[None, :], packets, p[:, None])
            if hinge is not None:
                # exact for one packet per step; packets of a step share the phase otherwise
                step_hinge = binomial_hinge(profile.n_symbols * packets, table, ser_target)
                hinge[block] += weight * step_hinge.mean(axis=-1)
    return ArmMoments(ser, per, pmf, hinge)


def combine_expected_reward(spec, moments, weights, jnr):
    """
    Expected reward of arms from the moments of each victim.

    Args:
        spec (RewardSpec): Reward function.
        moments (list[ArmMoments]): One entry per victim.
        weights (Sequence[float]): Victim weights summing to 1.
        jnr (np.ndarray): Average JNR per arm.

    Returns:
        np.ndarray: Expected reward per arm.
    """
    if not moments:
        raise ValueError("at least one victim is required")
    weights = np.asarray(weights, dtype=float)
    jnr = np.atleast_1d(np.asarray(jnr, dtype=float))
    if spec.kind is RewardKind.RAW_SER:
        return sum(w * m.ser for w, m in zip(weights, moments))
    if spec.kind is RewardKind.RAW_PER:
        return sum(w * m.per for w, m in zip(weights, moments))
    if spec.kind is RewardKind.THRESHOLDED_SER:
        if len(moments) != 1:
            raise ValueError("thresholded-ser rewards support a single victim")
        return moments[0].ser_hinge / jnr

    packets = moments[0].nack_pmf.shape[1] - 1
    if (packets + 1) ** len(moments) > MAX_NACK_COMBINATIONS:
        raise ValueError("too many victims and packets per step for an exact expectation")
    expected = np.zeros_like(jnr)
    for combo in itertools.product(range(packets + 1), repeat=len(moments)):
        probability = np.ones_like(jnr)
        for count, m in zip(combo, moments):
            probability = probability * m.nack_pmf[:, count]
        combined_per = float(np.dot(weights, combo)) / packets
        expected += probability * max(combined_per - spec.target, 0.0)
    return expected / jnr
