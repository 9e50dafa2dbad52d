"""Tests for the doubling schedule and the choice of M."""

import logging

import pytest

from jamming.discretization import (RoundSchedule, compute_m, compute_m_elimination,
                                    elimination_residual, round_discretization)
from models.error_rates import HolderParams
from utils.errors import DiscretizationWarning


class TestRoundSchedule:
    """Rounds of length 1, 2, 4, ..."""

    def test_boundaries(self):
        assert RoundSchedule(15).boundaries() == [1, 3, 7, 15]

    def test_truncated_at_horizon(self):
        rounds = list(RoundSchedule(10).rounds())
        assert [r.length for r in rounds] == [1, 2, 4, 3]
        assert rounds[-1].stop == 10

    def test_resume_from_round(self):
        rounds = list(RoundSchedule(15).rounds(first=2))
        assert [(r.index, r.start) for r in rounds] == [(2, 3), (3, 7)]

    def test_round_of(self):
        schedule = RoundSchedule(15)
        assert [schedule.round_of(step) for step in range(8)] == [0, 1, 1, 2, 2, 2, 2, 3]

    def test_horizon_must_be_positive(self):
        with pytest.raises(ValueError):
            RoundSchedule(0)


class TestComputeM:
    """Closed-form UCB1 discretization."""

    @pytest.mark.parametrize("length", [1, 2])
    def test_short_rounds(self, length, unit_holder):
        assert compute_m(length, unit_holder) == 1

    def test_reference_value(self, unit_holder):
        assert compute_m(65536, unit_holder) == 11

    def test_nondecreasing(self, unit_holder):
        values = [compute_m(2 ** k, unit_holder) for k in range(21)]
        assert values == sorted(values)

    def test_grows_with_constant(self):
        assert compute_m(65536, HolderParams(4.0, 1.0)) > compute_m(65536, HolderParams(1.0, 1.0))


class TestComputeMElimination:
    """Numerical root of the elimination balance."""

    def test_bracketing_certificate(self, unit_holder):
        m = compute_m_elimination(100_000, unit_holder)
        assert elimination_residual(m, 100_000, unit_holder) <= 0
        assert elimination_residual(m - 1, 100_000, unit_holder) > 0

    def test_matches_integer_scan(self, unit_holder):
        scan = next(m for m in range(2, 10_000) if elimination_residual(m, 100_000, unit_holder) <= 0)
        assert compute_m_elimination(100_000, unit_holder) == scan

    def test_grows_with_constant(self):
        values = [compute_m_elimination(100_000, HolderParams(constant, 1.0)) for constant in (0.5, 1, 2)]
        assert values == sorted(values)
        assert values[0] < values[-1]

    def test_short_round(self, unit_holder):
        with pytest.raises(ValueError):
            compute_m_elimination(3, unit_holder)

    def test_no_root_warns(self):
        with pytest.warns(DiscretizationWarning):
            assert compute_m_elimination(1000, HolderParams(0.0, 1.0)) == 2


class TestRoundDiscretization:
    """Dispatch on the inner policy."""

    def test_ucb1(self, unit_holder):
        assert round_discretization(65536, unit_holder, "ucb1") == 11

    def test_short_elimination_rounds(self, unit_holder):
        assert [round_discretization(t, unit_holder, "ucb-improved") for t in (1, 2, 3)] == [1, 1, 1]

    def test_warning_is_logged_not_raised(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="jamming.discretization"):
            assert round_discretization(1000, HolderParams(0.0, 1.0), "ucb-improved") == 2
        assert "no root" in caplog.text
