"""Tests for the symbol-level link simulator."""

import numpy as np
import pytest

from models.error_rates import ErrorRule, ser_awgn_jam, ser_bpsk_on_bpsk, ser_pulsed
from models.link_simulator import (ChannelParams, JammerAction, PacketOutcome, packet_streams,
                                   simulate_packet)
from models.modulation import ModulationScheme
from utils.units import db_to_linear

BPSK = ModulationScheme.BPSK
N_LARGE = 100_000


def awgn_on_bpsk(snr, jnr):
    return ser_awgn_jam(BPSK, snr, jnr)


def binomial_band(p, n, sigmas=5):
    return sigmas * np.sqrt(p * (1 - p) / n)


class TestSimulatePacket:
    """Empirical SER against the analytic rates."""

    def test_zero_snr_gives_coin_flips(self, rng):
        outcome = simulate_packet(BPSK, ChannelParams(0.0), JammerAction(BPSK, 10.0, 1.0), N_LARGE,
                                  ErrorRule(), rng)
        assert abs(outcome.symbol_error_rate - 0.5) < binomial_band(0.5, N_LARGE)

    def test_continuous_bpsk_jamming_is_harmless_at_high_snr(self, rng):
        outcome = simulate_packet(BPSK, ChannelParams(100.0), JammerAction(BPSK, 10.0, 1.0),
                                  1_000_000, ErrorRule(), rng)
        assert outcome.symbol_errors == 0
        assert not outcome.packet_error

    def test_pulsed_bpsk_matches_closed_form(self, rng):
        expected = ser_pulsed(ser_bpsk_on_bpsk, 100.0, 10.0, 0.078)
        outcome = simulate_packet(BPSK, ChannelParams(100.0), JammerAction(BPSK, 10.0, 0.078),
                                  N_LARGE, ErrorRule(), rng)
        np.testing.assert_allclose(expected, 0.0354, atol=5e-4)
        assert abs(outcome.symbol_error_rate - expected) < binomial_band(expected, N_LARGE)

    def test_packet_error_follows_threshold_rule(self, rng):
        outcome = simulate_packet(BPSK, ChannelParams(0.0), JammerAction(BPSK, 1.0, 1.0), 1000,
                                  ErrorRule("threshold", 0.1), rng)
        assert outcome.packet_error

    def test_streams_make_packets_reproducible(self):
        action = JammerAction(ModulationScheme.QPSK, 20.0, 0.3)
        channel = ChannelParams(10.0, coherent=False)
        first = simulate_packet(BPSK, channel, action, 500, ErrorRule(), packet_streams(7, 3))
        second = simulate_packet(BPSK, channel, action, 500, ErrorRule(), packet_streams(7, 3))
        assert first == second

    def test_rejects_empty_packet(self, rng):
        with pytest.raises(ValueError):
            simulate_packet(BPSK, ChannelParams(1.0), JammerAction(BPSK, 1.0, 1.0), 0, ErrorRule(), rng)


class TestClosedFormGrid:
    """Symbol-level SER over an (SNR, JNR, rho) grid for both closed forms."""

    @pytest.mark.parametrize("snr_db", [0.0, 10.0])
    @pytest.mark.parametrize("jnr_db", [0.0, 10.0])
    @pytest.mark.parametrize("rho", [0.25, 1.0])
    @pytest.mark.parametrize("jammer, closed_form", [
        (ModulationScheme.BPSK, ser_bpsk_on_bpsk),
        (ModulationScheme.AWGN, awgn_on_bpsk),
    ], ids=["bpsk", "awgn"])
    def test_simulated_ser_within_binomial_band(self, snr_db, jnr_db, rho, jammer, closed_form, rng):
        snr, jnr = db_to_linear(snr_db), db_to_linear(jnr_db)
        expected = ser_pulsed(closed_form, snr, jnr, rho)
        outcome = simulate_packet(BPSK, ChannelParams(snr), JammerAction(jammer, jnr, rho), N_LARGE,
                                  ErrorRule(), rng)
        assert abs(outcome.symbol_error_rate - expected) < binomial_band(expected, N_LARGE)


class TestRecords:
    """Validation of the value types."""

    @pytest.mark.parametrize("rho", [0.0, -0.1, 1.5])
    def test_rho_outside_unit_interval(self, rho):
        with pytest.raises(ValueError):
            JammerAction(BPSK, 1.0, rho)

    def test_negative_jnr(self):
        with pytest.raises(ValueError):
            JammerAction(BPSK, -1.0, 0.5)

    def test_peak_jnr_and_label(self):
        action = JammerAction("awgn", 10.0, 0.5)
        assert action.scheme is ModulationScheme.AWGN
        assert action.peak_jnr == 20.0
        assert action.label() == "awgn/10.00dB/rho=0.5000"

    def test_negative_snr(self):
        with pytest.raises(ValueError):
            ChannelParams(-1.0)

    def test_outcome_counts_checked(self):
        with pytest.raises(ValueError):
            PacketOutcome(10, 11, True)
