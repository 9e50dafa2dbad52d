"""
Modulation Module

This module defines the signaling schemes available to the victim link and to
the jammer, draws random symbol streams and performs minimum-distance (ML)
detection at the victim receiver.

Power convention: the receiver noise has unit variance on each real
dimension. Jamming waveforms carry unit average power E|j|^2 = 1 like the
constellations, so an AWGN jammer at JNR adds JNR / 2 on each axis.
"""

from enum import Enum

import numpy as np

SQRT2 = np.sqrt(2.0)


class ModulationScheme(Enum):
    """Signaling schemes. AWGN is only meaningful for the jammer."""

    AWGN = "awgn"
    BPSK = "bpsk"
    QPSK = "qpsk"

    @property
    def is_constellation(self):
        return self is not ModulationScheme.AWGN

    @classmethod
    def parse(cls, value):
        """Build a scheme from its name, case-insensitively.

        Args:
            value (str | ModulationScheme): Scheme name such as ``"bpsk"``.

        Returns:
            ModulationScheme: The matching scheme.
        """
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"Unknown signaling scheme {value!r} (expected one of {names})") from None


VICTIM_SCHEMES = (ModulationScheme.BPSK, ModulationScheme.QPSK)
JAMMER_SCHEMES = (ModulationScheme.AWGN, ModulationScheme.BPSK, ModulationScheme.QPSK)

_CONSTELLATIONS = {
    ModulationScheme.BPSK: np.array([1.0 + 0.0j, -1.0 + 0.0j]),
    ModulationScheme.QPSK: np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / SQRT2,
}


def constellation(scheme):
    """Return the unit-energy constellation points of a scheme.

    Args:
        scheme (ModulationScheme): BPSK or QPSK.

    Returns:
        np.ndarray: Complex constellation points (a copy).
    """
    scheme = ModulationScheme.parse(scheme)
    if not scheme.is_constellation:
        raise ValueError("AWGN jamming has no constellation")
    return _CONSTELLATIONS[scheme].copy()


def modulate(scheme, count, rng, victim=False):
    """Draw ``count`` i.i.d. symbols of a signaling scheme.

    Args:
        scheme (ModulationScheme): Scheme to draw from.
        count (int): Number of symbols, at least 1.
        rng (np.random.Generator): Random stream.
        victim (bool): True when the stream carries victim data, which
            rules out AWGN.

    Returns:
        np.ndarray: Complex symbols. Constellation symbols are uniform over
        the constellation; AWGN samples are circular Gaussian with unit
        average power, i.e. variance 1/2 per real dimension.
    """
    scheme = ModulationScheme.parse(scheme)
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if victim and not scheme.is_constellation:
        raise ValueError("victim data cannot use AWGN signaling")

    if scheme is ModulationScheme.AWGN:
        return (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / SQRT2

    points = _CONSTELLATIONS[scheme]
    return points[rng.integers(0, len(points), size=count)]


def ml_detect(received, victim_scheme):
    """Minimum-distance decision for BPSK or QPSK.

    Under Gaussian noise of equal variance on both axes the nearest point is
    the ML decision, which reduces to per-axis sign decisions. A sample on a
    decision boundary resolves to the non-negative side of that axis, so
    exactly 0 decides +1 for BPSK.

    Args:
        received (complex | np.ndarray): Received sample(s).
        victim_scheme (ModulationScheme): BPSK or QPSK.

    Returns:
        complex | np.ndarray: Decided constellation point(s), same shape as
        ``received``.
    """
    victim_scheme = ModulationScheme.parse(victim_scheme)
    y = np.asarray(received)
    real_sign = np.where(y.real >= 0, 1.0, -1.0)

    if victim_scheme is ModulationScheme.BPSK:
        decided = real_sign + 0.0j
    elif victim_scheme is ModulationScheme.QPSK:
        imag_sign = np.where(y.imag >= 0, 1.0, -1.0)
        decided = (real_sign + 1j * imag_sign) / SQRT2
    else:
        raise ValueError("ML detection needs a BPSK or QPSK victim")

    if decided.ndim == 0:
        return complex(decided)
    return decided
