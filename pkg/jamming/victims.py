"""
Victims Module

Victim transmitter-receiver pairs: static, i.i.d. stochastic and windowed
adaptive SNR policies, the per-step realization of the victim's strategy and
the strategy mixture used for expected rewards.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from models.error_rates import ErrorRule
from models.modulation import VICTIM_SCHEMES, ModulationScheme
from utils.units import db_to_linear, linear_to_db

logger = logging.getLogger(__name__)

SNR_QUADRATURE_NODES = 16


class SnrPolicy(Enum):
    STATIC = "static"
    IID = "iid"
    ADAPTIVE = "adaptive"


class AdaptRule(Enum):
    """How an adaptive victim reacts at the end of its window.

    REDRAW draws a new SNR uniformly (in dB) when the windowed PER exceeds
    the trigger, STEP raises the SNR by one step above the trigger and lowers
    it otherwise, PERIODIC redraws every window regardless of the PER.
    """

    REDRAW = "redraw"
    STEP = "step"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class VictimState:
    """Strategy a victim uses at one step."""

    scheme: ModulationScheme
    snr: float


@dataclass(frozen=True)
class VictimProfile:
    """Behaviour of one victim link.

    Attributes:
        policy (SnrPolicy): How the SNR (and for iid the scheme) evolves.
        schemes (tuple): Victim schemes; a single scheme unless iid.
        snr (float): Current linear SNR (ignored by iid victims).
        snr_range (tuple): (snr_min, snr_max), linear.
        scheme_weights (tuple | None): iid scheme probabilities, uniform if None.
        n_symbols (int): Symbols per packet.
        error_rule (ErrorRule): Packet failure rule.
        coherent (bool): False draws a random phase offset per packet.
        adapt_window (int): Steps between adaptive decisions.
        trigger (float): Windowed PER above which the victim reacts.
        adapt_rule (AdaptRule): Reaction of an adaptive victim.
        snr_step_db (float): Step size of the STEP rule.
        name (str): Label for reports.
    """

    policy: SnrPolicy = SnrPolicy.STATIC
    schemes: tuple = (ModulationScheme.BPSK,)
    snr: float = 100.0
    snr_range: tuple = (1.0, 100.0)
    scheme_weights: tuple = None
    n_symbols: int = 10_000
    error_rule: ErrorRule = ErrorRule()
    coherent: bool = True
    adapt_window: int = 50_000
    trigger: float = 0.2
    adapt_rule: AdaptRule = AdaptRule.REDRAW
    snr_step_db: float = 2.0
    name: str = "victim"

    def __post_init__(self):
        object.__setattr__(self, "policy", SnrPolicy(self.policy))
        object.__setattr__(self, "adapt_rule", AdaptRule(self.adapt_rule))
        object.__setattr__(self, "error_rule", ErrorRule.parse(self.error_rule))
        schemes = tuple(ModulationScheme.parse(s) for s in self.schemes)
        object.__setattr__(self, "schemes", schemes)
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))

    def violations(self):
        """Every invariant the profile breaks, as messages."""
        problems = []
        if not self.schemes:
            problems.append(f"{self.name}: needs at least one scheme")
        if any(s not in VICTIM_SCHEMES for s in self.schemes):
            problems.append(f"{self.name}: victim schemes must be BPSK or QPSK")
        if self.policy is not SnrPolicy.IID and len(self.schemes) > 1:
            problems.append(f"{self.name}: only iid victims may use several schemes")
        low, high = self.snr_range
        if not 0 <= low <= high:
            problems.append(f"{self.name}: snr_range must satisfy 0 <= min <= max")
        if self.policy is not SnrPolicy.IID and not low <= self.snr <= high:
            problems.append(f"{self.name}: snr {self.snr:g} outside snr_range")
        if self.policy is not SnrPolicy.STATIC and low <= 0:
            problems.append(f"{self.name}: snr_range must be positive for a varying victim")
        if self.scheme_weights is not None:
            weights = np.asarray(self.scheme_weights, dtype=float)
            if weights.shape != (len(self.schemes),) or np.any(weights < 0) \
                    or not np.isclose(weights.sum(), 1.0):
                problems.append(f"{self.name}: scheme_weights must be a probability vector per scheme")
        if self.n_symbols < 1:
            problems.append(f"{self.name}: n_symbols must be at least 1")
        if self.adapt_window < 1:
            problems.append(f"{self.name}: adapt_window must be at least 1")
        if not 0.0 <= self.trigger <= 1.0:
            problems.append(f"{self.name}: trigger must lie in [0, 1]")
        return problems

    @property
    def scheme(self):
        return self.schemes[0]

    @property
    def weights(self):
        if self.scheme_weights is None:
            return np.full(len(self.schemes), 1.0 / len(self.schemes))
        return np.asarray(self.scheme_weights, dtype=float)

    @property
    def snr_db_range(self):
        return tuple(float(linear_to_db(v)) for v in self.snr_range)

    def current_state(self):
        return VictimState(self.scheme, float(self.snr))


def draw_snr(profile, rng):
    """SNR drawn uniformly in dB over the profile's range."""
    low, high = profile.snr_db_range
    return float(np.clip(db_to_linear(rng.uniform(low, high)), *profile.snr_range))


def realize(profile, rng):
    """
    Strategy of the victim for one step.

    Args:
        profile (VictimProfile): Victim behaviour.
        rng (np.random.Generator): Stream for iid draws.

    Returns:
        VictimState: The scheme and SNR in effect.
    """
    if profile.policy is not SnrPolicy.IID:
        return profile.current_state()
    index = int(rng.choice(len(profile.schemes), p=profile.weights))
    return VictimState(profile.schemes[index], draw_snr(profile, rng))


def state_mixture(profile):
    """
    Strategy distribution of a victim as weighted states.

    Static and adaptive victims contribute their current state. iid victims
    mix their schemes with a Gauss-Legendre rule over the SNR range in dB.

    Returns:
        list: ``(VictimState, weight)`` pairs whose weights sum to 1.
    """
    if profile.policy is not SnrPolicy.IID:
        return [(profile.current_state(), 1.0)]
    low, high = profile.snr_db_range
    if high == low:
        snr_points, snr_weights = np.array([profile.snr_range[0]]), np.array([1.0])
    else:
        nodes, quad_weights = np.polynomial.legendre.leggauss(SNR_QUADRATURE_NODES)
        snr_points = db_to_linear(low + (high - low) * (nodes + 1.0) / 2.0)
        snr_weights = quad_weights / 2.0
    return [(VictimState(scheme, float(snr)), float(w * sw))
            for scheme, w in zip(profile.schemes, profile.weights)
            for snr, sw in zip(np.atleast_1d(snr_points), snr_weights)]


def adaptive_update(profile, recent_per_history, rng=None):
    """
    Apply an adaptive victim's window decision.

    Args:
        profile (VictimProfile): An adaptive victim at a window boundary.
        recent_per_history (Sequence[float]): PER estimates of the window.
        rng (np.random.Generator | None): Stream for SNR redraws.

    Returns:
        VictimProfile: The profile for the next window (the same object
        when nothing changes).
    """
    if profile.policy is not SnrPolicy.ADAPTIVE:
        raise ValueError("adaptive_update needs an adaptive victim")
    history = np.asarray(recent_per_history, dtype=float)
    windowed_per = float(history.mean()) if history.size else 0.0
    rng = rng if rng is not None else np.random.default_rng()

    if profile.adapt_rule is AdaptRule.PERIODIC:
        snr = draw_snr(profile, rng)
    elif profile.adapt_rule is AdaptRule.STEP:
        step = profile.snr_step_db if windowed_per > profile.trigger else -profile.snr_step_db
        snr_db = float(np.clip(linear_to_db(profile.snr) + step, *profile.snr_db_range))
        snr = float(np.clip(db_to_linear(snr_db), *profile.snr_range))
    elif windowed_per > profile.trigger:
        snr = draw_snr(profile, rng)
    else:
        return profile

    logger.debug("%s adapts: windowed PER %.3f, SNR %.2f dB -> %.2f dB", profile.name,
                 windowed_per, linear_to_db(profile.snr), linear_to_db(snr))
    return replace(profile, snr=snr)
