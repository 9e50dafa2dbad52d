"""
Link Simulator Module

Symbol-level Monte Carlo of the jammed AWGN link after matched filtering and
sampling:

    y_k = sqrt(SNR) x_k + 1{jam_k} sqrt(JNR / rho) e^{i phi} j_k + n_k

with i.i.d. Bernoulli(rho) jam pulses, an optional per-packet phase offset
and an ML receiver that ignores the jammer.
"""

from dataclasses import dataclass

import numpy as np

from models.error_rates import ErrorRule
from models.modulation import ModulationScheme, ml_detect, modulate

ROLES = ("victim", "jammer", "noise", "phase")


@dataclass(frozen=True)
class ChannelParams:
    """Victim-side channel state.

    Attributes:
        snr (float): Linear SNR against unit per-dimension noise variance.
        coherent (bool): False draws a uniform phase offset per packet.
    """

    snr: float
    coherent: bool = True

    def __post_init__(self):
        if self.snr < 0:
            raise ValueError(f"snr must be nonnegative, got {self.snr}")

    @property
    def phase_offset_mode(self):
        return "coherent" if self.coherent else "random-uniform-per-packet"


@dataclass(frozen=True)
class JammerAction:
    """One arm of the mixed bandit: signaling scheme, average JNR and pulse ratio."""

    scheme: ModulationScheme
    jnr: float
    rho: float

    def __post_init__(self):
        object.__setattr__(self, "scheme", ModulationScheme.parse(self.scheme))
        if self.jnr < 0:
            raise ValueError(f"jnr must be nonnegative, got {self.jnr}")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")

    @property
    def peak_jnr(self):
        """Instantaneous JNR during a pulse."""
        return self.jnr / self.rho

    def label(self):
        jnr_db = 10.0 * np.log10(self.jnr) if self.jnr > 0 else float("-inf")
        return f"{self.scheme.value}/{jnr_db:.2f}dB/rho={self.rho:.4f}"


@dataclass(frozen=True)
class PacketOutcome:
    """Symbol and packet error accounting for one packet."""

    n_symbols: int
    symbol_errors: int
    packet_error: bool

    def __post_init__(self):
        if not 0 <= self.symbol_errors <= self.n_symbols:
            raise ValueError("symbol_errors must lie in [0, n_symbols]")

    @property
    def symbol_error_rate(self):
        return self.symbol_errors / self.n_symbols


@dataclass
class PacketStreams:
    """Named random streams for the draws of a single packet."""

    victim: np.random.Generator
    jammer: np.random.Generator
    noise: np.random.Generator
    phase: np.random.Generator

    @classmethod
    def from_generator(cls, rng):
        """Use one generator for every role (draw order then matters)."""
        return cls(rng, rng, rng, rng)


def packet_streams(seed, packet_index):
    """Derive the per-role streams of a packet from the master seed.

    Each role gets its own ``SeedSequence`` keyed on (seed, packet index,
    role), so packets can be simulated in any order or in parallel and still
    reproduce bit for bit.
    """
    return PacketStreams(*(np.random.default_rng([int(seed), int(packet_index), role_id])
                           for role_id in range(len(ROLES))))


def jamming_waveform(action, n_symbols, rng):
    """Pulsed jamming samples: on with probability rho at power jnr / rho.

    Args:
        action (JammerAction): Jamming arm.
        n_symbols (int): Number of samples.
        rng (np.random.Generator): Jammer stream.

    Returns:
        np.ndarray: Complex jamming samples, zero where the pulse is off.
    """
    pulses = rng.random(n_symbols) < action.rho
    symbols = modulate(action.scheme, n_symbols, rng)
    return pulses * np.sqrt(action.peak_jnr) * symbols


def simulate_packet(victim_scheme, channel, action, n_symbols, error_rule, rng):
    """Simulate one packet of the jammed link.

    Args:
        victim_scheme (ModulationScheme): Victim's BPSK or QPSK.
        channel (ChannelParams): SNR and phase mode.
        action (JammerAction): Jamming arm.
        n_symbols (int): Symbols per packet.
        error_rule (ErrorRule): Packet failure rule.
        rng (PacketStreams | np.random.Generator): Random streams.

    Returns:
        PacketOutcome: Symbol errors and the packet verdict.
    """
    if n_symbols < 1:
        raise ValueError(f"n_symbols must be at least 1, got {n_symbols}")
    victim_scheme = ModulationScheme.parse(victim_scheme)
    error_rule = ErrorRule.parse(error_rule)
    streams = rng if isinstance(rng, PacketStreams) else PacketStreams.from_generator(rng)

    x = modulate(victim_scheme, n_symbols, streams.victim, victim=True)
    jam = jamming_waveform(action, n_symbols, streams.jammer)
    noise = streams.noise.standard_normal(n_symbols) + 1j * streams.noise.standard_normal(n_symbols)
    phi = 0.0 if channel.coherent else streams.phase.uniform(0.0, 2.0 * np.pi)

    y = np.sqrt(channel.snr) * x + np.exp(1j * phi) * jam + noise
    decided = ml_detect(y, victim_scheme)
    # decided points are exact constellation values
    symbol_errors = int(np.count_nonzero(np.abs(decided - x) > 1e-9))
    return PacketOutcome(n_symbols, symbol_errors, error_rule.is_packet_error(symbol_errors, n_symbols))
