"""
Error Rates Module

Closed-form and numerically evaluated symbol error rates of a jammed AWGN
link, the SER <-> PER transforms used by the ACK/NACK feedback model, and the
Hoelder-continuity constants that drive the learner's discretization.

All powers are linear ratios against the per-dimension noise variance; a
jamming waveform at JNR has average power JNR spread over both axes.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc
from scipy.stats import binom

from models.modulation import ModulationScheme, constellation
from utils.errors import QuadratureError

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

PHASE_NODES = 64
MAX_PHASE_NODES = 4096
QUADRATURE_TOL = 1e-6
_CHUNK = 512
UNJAMMED_RATE_BOUND = 1.0


def q_function(x):
    """Gaussian tail probability Q(x) = 0.5 * erfc(x / sqrt(2))."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / SQRT2)


@dataclass(frozen=True)
class ErrorRule:
    """Rule deciding when a packet counts as lost.

    Attributes:
        kind (str): ``"any-error"`` or ``"threshold"``.
        fraction (float): Fraction of erroneous symbols that fails a packet
            under the threshold rule.
    """

    kind: str = "threshold"
    fraction: float = 0.1

    def __post_init__(self):
        if self.kind not in ("any-error", "threshold"):
            raise ValueError(f"Unknown error rule {self.kind!r}")
        if self.kind == "threshold" and not 0.0 < self.fraction <= 1.0:
            raise ValueError(f"threshold fraction must be in (0, 1], got {self.fraction}")

    @classmethod
    def parse(cls, text):
        """Parse ``any-error``, ``threshold`` or ``threshold:0.1``."""
        if isinstance(text, cls):
            return text
        text = str(text).strip().lower()
        if text == "any-error":
            return cls("any-error", 1.0)
        if text.startswith("threshold"):
            _, _, value = text.partition(":")
            return cls("threshold", float(value) if value else 0.1)
        raise ValueError(f"Unknown error rule {text!r}")

    def min_errors(self, n_symbols):
        """Smallest symbol-error count that fails a packet of ``n_symbols``."""
        if self.kind == "any-error":
            return 1
        # round() absorbs float noise such as 0.1 * 30 = 3.0000000000000004
        return max(1, math.ceil(round(self.fraction * n_symbols, 9)))

    def is_packet_error(self, symbol_errors, n_symbols):
        return symbol_errors >= self.min_errors(n_symbols)

    def __str__(self):
        return self.kind if self.kind == "any-error" else f"threshold:{self.fraction:g}"


@dataclass(frozen=True)
class HolderParams:
    """Uniform local Hoelder continuity parameters of an expected reward.

    Attributes:
        constant_L (float): Hoelder constant, nonnegative.
        exponent_alpha (float): Exponent in (0, 1].
        restriction_delta (float): Neighbourhood radius of the local condition.
    """

    constant_L: float = 1.0
    exponent_alpha: float = 1.0
    restriction_delta: float = 1.0

    def __post_init__(self):
        if self.constant_L < 0:
            raise ValueError("Hoelder constant must be nonnegative")
        if not 0.0 < self.exponent_alpha <= 1.0:
            raise ValueError("Hoelder exponent must lie in (0, 1]")
        if self.restriction_delta <= 0:
            raise ValueError("Hoelder restriction must be positive")


@dataclass(frozen=True)
class SerQuery:
    """Arguments of a general SER evaluation."""

    victim_scheme: ModulationScheme
    jammer_scheme: ModulationScheme
    snr: float
    jnr: float
    rho: float = 1.0
    coherent: bool = True


@dataclass(frozen=True)
class SerEstimate:
    """SER recovered from a PER estimate; ``saturated`` marks PER = 1."""

    value: float
    saturated: bool = False


def ser_bpsk_on_bpsk(snr, jnr):
    """SER of a BPSK victim under continuous coherent BPSK jamming."""
    snr = np.asarray(snr, dtype=float)
    jnr = np.asarray(jnr, dtype=float)
    if np.any(snr < 0) or np.any(jnr < 0):
        raise ValueError("snr and jnr must be nonnegative")
    a, b = np.sqrt(snr), np.sqrt(jnr)
    value = 0.25 * (erfc((a + b) / SQRT2) + erfc((a - b) / SQRT2))
    return float(value) if value.ndim == 0 else value


def ser_pulsed(base_ser, snr, jnr, rho):
    """Mix jammed and unjammed SER for a pulse ratio ``rho``.

    The jammer is on with probability ``rho`` at power ``jnr / rho``.

    Args:
        base_ser (callable): ``base_ser(snr, jnr)`` for continuous jamming.
        snr (float): Victim SNR.
        jnr (float | np.ndarray): Average JNR.
        rho (float | np.ndarray): Pulse ratio in (0, 1].

    Returns:
        float | np.ndarray: Pulsed SER.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0) or np.any(rho > 1):
        raise ValueError("pulse ratio rho must lie in (0, 1]")
    jnr = np.asarray(jnr, dtype=float)
    if rho.ndim == 0 and rho == 1.0:
        value = np.asarray(base_ser(snr, jnr), dtype=float)
    else:
        value = rho * np.asarray(base_ser(snr, jnr / rho), dtype=float) \
            + (1.0 - rho) * np.asarray(base_ser(snr, 0.0), dtype=float)
    return float(value) if value.ndim == 0 else value


def _error_probability(victim_scheme, mean, points, scale):
    """Per-pair symbol error probability given the noiseless received point."""
    q_real = q_function(mean.real * np.sign(points.real) / scale)
    if victim_scheme is ModulationScheme.BPSK:
        return q_real
    q_imag = q_function(mean.imag * np.sign(points.imag) / scale)
    return q_real + q_imag - q_real * q_imag


def conditional_ser(victim_scheme, jammer_scheme, snr, jnr, phase=0.0):
    """Exact SER with the jammer continuously on at ``jnr`` and a fixed phase.

    The Gaussian noise integral over each ML decision region factors per
    axis, so it is evaluated in closed form and averaged over the uniform
    victim and jammer symbols.

    Args:
        victim_scheme (ModulationScheme): BPSK or QPSK.
        jammer_scheme (ModulationScheme): AWGN, BPSK or QPSK.
        snr (float): Victim SNR.
        jnr (float | np.ndarray): Jamming power while on.
        phase (float | np.ndarray): Phase offset of the jamming signal.

    Returns:
        float | np.ndarray: SER with the broadcast shape of ``jnr`` and
        ``phase``.
    """
    victim_scheme = ModulationScheme.parse(victim_scheme)
    jammer_scheme = ModulationScheme.parse(jammer_scheme)
    if snr < 0:
        raise ValueError("snr must be nonnegative")
    points = constellation(victim_scheme)
    jnr, phase = np.broadcast_arrays(np.asarray(jnr, dtype=float), np.asarray(phase, dtype=float))
    if np.any(jnr < 0):
        raise ValueError("jnr must be nonnegative")

    signal = math.sqrt(snr) * points
    if jammer_scheme is ModulationScheme.AWGN:
        # unit-power complex noise puts jnr / 2 on each axis
        scale = np.sqrt(1.0 + 0.5 * jnr)[..., None]
        errors = _error_probability(victim_scheme, signal + 0j, points, scale)
        value = errors.mean(axis=-1)
    else:
        jam = constellation(jammer_scheme)
        jam = np.sqrt(jnr)[..., None] * np.exp(1j * phase)[..., None] * jam
        mean = signal[:, None] + jam[..., None, :]
        errors = _error_probability(victim_scheme, mean, points[:, None], 1.0)
        value = errors.mean(axis=(-2, -1))
    return float(value) if value.ndim == 0 else value


def phase_averaged_ser(victim_scheme, jammer_scheme, snr, jnr, tol=QUADRATURE_TOL):
    """Continuous-jamming SER averaged over a uniform phase offset.

    Uses the periodic trapezoid rule starting at 64 nodes and doubling until
    two successive estimates agree within ``tol``.

    Raises:
        QuadratureError: If ``MAX_PHASE_NODES`` is reached without agreement.
    """
    jammer_scheme = ModulationScheme.parse(jammer_scheme)
    jnr = np.asarray(jnr, dtype=float)
    if jammer_scheme is ModulationScheme.AWGN:
        # circularly symmetric, the phase is irrelevant
        return conditional_ser(victim_scheme, jammer_scheme, snr, jnr)

    flat = jnr.reshape(-1)
    out = np.empty_like(flat)
    for start in range(0, flat.size, _CHUNK):
        block = flat[start:start + _CHUNK, None]
        nodes = PHASE_NODES
        phases = 2.0 * np.pi * np.arange(nodes) / nodes
        values = conditional_ser(victim_scheme, jammer_scheme, snr, block, phases)
        estimate = values.mean(axis=-1)
        while True:
            # doubling reuses the old nodes; new ones sit at the midpoints
            mid = phases + np.pi / nodes
            extra = conditional_ser(victim_scheme, jammer_scheme, snr, block, mid)
            refined = 0.5 * (estimate + extra.mean(axis=-1))
            nodes *= 2
            phases = np.concatenate([phases, mid])
            if np.max(np.abs(refined - estimate)) <= tol:
                estimate = refined
                break
            estimate = refined
            if nodes >= MAX_PHASE_NODES:
                raise QuadratureError(
                    f"phase average did not converge with {nodes} nodes (snr={snr}, jnr range "
                    f"{block.min():.4g}..{block.max():.4g})")
        out[start:start + _CHUNK] = estimate
    out = out.reshape(jnr.shape)
    return float(out) if out.ndim == 0 else out


def ser_awgn_jam(victim_scheme, snr, jnr):
    """SER under continuous AWGN jamming.

    The jammer adds jnr / 2 to the unit noise variance of each real axis, so
    BPSK gives Q(sqrt(snr / (1 + jnr / 2))).
    """
    victim_scheme = ModulationScheme.parse(victim_scheme)
    if not victim_scheme.is_constellation:
        raise ValueError("victim must use BPSK or QPSK")
    return conditional_ser(victim_scheme, ModulationScheme.AWGN, snr, jnr)


def ser_numeric(query):
    """General SER for any scheme pair, pulse ratio and phase mode.

    Integrates over the victim and jammer symbols, the Gaussian noise, the
    Bernoulli(rho) jam indicator and, for non-coherent reception, a uniform
    phase offset.

    Args:
        query (SerQuery): Evaluation point.

    Returns:
        float: SER in [0, 1].

    Raises:
        QuadratureError: If the phase average does not converge.
    """
    victim = ModulationScheme.parse(query.victim_scheme)
    jammer = ModulationScheme.parse(query.jammer_scheme)
    if not victim.is_constellation:
        raise ValueError("victim must use BPSK or QPSK")

    if query.coherent:
        def base(snr, jnr):
            return conditional_ser(victim, jammer, snr, jnr)
    else:
        def base(snr, jnr):
            return phase_averaged_ser(victim, jammer, snr, jnr)

    return float(np.clip(ser_pulsed(base, query.snr, query.jnr, query.rho), 0.0, 1.0))


def per_from_ser(ser, n_symbols, rule):
    """Packet error rate implied by an i.i.d. symbol error rate.

    Args:
        ser (float | np.ndarray): Symbol error rate in [0, 1].
        n_symbols (int): Symbols per packet.
        rule (ErrorRule): Packet failure rule.

    Returns:
        float | np.ndarray: PER. ``any-error`` gives 1 - (1 - ser)^n and the
        threshold rule the exact binomial upper tail.
    """
    rule = ErrorRule.parse(rule)
    if n_symbols < 1:
        raise ValueError("n_symbols must be at least 1")
    ser = np.clip(np.asarray(ser, dtype=float), 0.0, 1.0)
    if rule.kind == "any-error":
        with np.errstate(divide="ignore"):
            value = -np.expm1(n_symbols * np.log1p(-ser))
    else:
        value = binom.sf(rule.min_errors(n_symbols) - 1, n_symbols, ser)
    value = np.clip(value, 0.0, 1.0)
    return float(value) if value.ndim == 0 else value


def ser_from_per(per_estimate, n_symbols):
    """Invert the any-error transform: SER = 1 - (1 - PER)^(1/n).

    Args:
        per_estimate (float): Estimated PER in [0, 1].
        n_symbols (int): Symbols per packet.

    Returns:
        SerEstimate: The SER, flagged as saturated when PER = 1.
    """
    if n_symbols < 1:
        raise ValueError("n_symbols must be at least 1")
    if not 0.0 <= per_estimate <= 1.0:
        raise ValueError(f"PER estimate must lie in [0, 1], got {per_estimate}")
    if per_estimate >= 1.0:
        logger.debug("PER feedback saturated at 1, SER estimate pinned to 1")
        return SerEstimate(1.0, saturated=True)
    return SerEstimate(float(-np.expm1(np.log1p(-per_estimate) / n_symbols)))


def holder_components(snr_max, jnr_min):
    """Candidate Hoelder constants of the pulsed SER.

    The unjammed term (1 - rho) p_e(snr, 0) moves with rho at rate
    p_e(snr, 0), a probability, so ``L1`` = 1 bounds it for every victim
    scheme and SNR (the largest actual rate is 3/4, QPSK at snr = 0).

    Returns:
        dict: ``L1`` = 1 (unjammed term), ``L2`` = sqrt(SNR_max / 8 pi) (JNR
        term), ``L3`` = erfc(SNR_max) / 2 (pulse-ratio term, taken as
        written) and ``L_prime`` = sqrt(1 / (2 pi JNR_min)) (noise density
        term).
    """
    if snr_max <= 0:
        raise ValueError("snr_max must be positive")
    if jnr_min < 1:
        raise ValueError("jnr_min must be at least 1 (0 dB)")
    return {
        "L1": UNJAMMED_RATE_BOUND,
        "L2": math.sqrt(snr_max / (8.0 * math.pi)),
        "L3": float(erfc(snr_max)) / 2.0,
        "L_prime": math.sqrt(1.0 / (2.0 * math.pi * jnr_min)),
    }


def holder_constants(snr_max, jnr_min, restriction_delta=1.0):
    """Worst-case Hoelder parameters for a scenario.

    Args:
        snr_max (float): Largest victim SNR (linear).
        jnr_min (float): Smallest average JNR (linear, at least 1).
        restriction_delta (float): Locality radius to attach.

    Returns:
        HolderParams: The largest component constant with alpha = 1.
    """
    components = holder_components(snr_max, jnr_min)
    return HolderParams(constant_L=max(components.values()), exponent_alpha=1.0,
                        restriction_delta=restriction_delta)


def phase_nodes(count=PHASE_NODES):
    """Equispaced phase offsets on [0, 2 pi) for periodic averaging."""
    return 2.0 * np.pi * np.arange(count) / count


def pulsed_ser_at_phase(victim_scheme, jammer_scheme, snr, jnr, rho, phase=0.0):
    """Pulsed-jamming SER for a fixed phase offset.

    Broadcasts ``jnr`` and ``rho`` (same shape) against ``phase``; a
    non-coherent packet draws its phase once, after which symbol errors are
    i.i.d. with this probability.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0) or np.any(rho > 1):
        raise ValueError("pulse ratio rho must lie in (0, 1]")
    jnr = np.asarray(jnr, dtype=float)
    on = conditional_ser(victim_scheme, jammer_scheme, snr, jnr / rho, phase)
    off = conditional_ser(victim_scheme, jammer_scheme, snr, 0.0)
    value = np.clip(rho * on + (1.0 - rho) * off, 0.0, 1.0)
    return float(value) if np.ndim(value) == 0 else value
