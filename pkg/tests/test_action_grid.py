"""Tests for the jammer's action space and its grids."""

import numpy as np
import pytest

from jamming.action_grid import ActionSpace
from models.link_simulator import JammerAction
from models.modulation import ModulationScheme
from utils.errors import ArmBudgetError


@pytest.fixture
def space():
    return ActionSpace(jnr_min=1.0, jnr_max=100.0)


class TestActionSpace:
    """Validation and normalization."""

    def test_default_schemes(self, space):
        assert space.schemes == (ModulationScheme.AWGN, ModulationScheme.BPSK, ModulationScheme.QPSK)

    def test_schemes_from_names(self):
        assert ActionSpace(("bpsk",)).schemes == (ModulationScheme.BPSK,)

    def test_jnr_below_zero_db(self):
        with pytest.raises(ValueError):
            ActionSpace(jnr_min=0.5)

    def test_duplicate_schemes(self):
        with pytest.raises(ValueError):
            ActionSpace(("bpsk", "BPSK"))

    def test_normalize_jnr(self, space):
        np.testing.assert_allclose(space.normalize_jnr([1.0, 50.5, 100.0]), [0.0, 0.5, 1.0])

    def test_arm_budget(self, space):
        with pytest.raises(ArmBudgetError):
            space.grid(100, arm_budget=1000)
        assert len(space.grid(100, arm_budget=None)) == 30_000


class TestActionGrid:
    """Arm layout and lookups."""

    def test_full_grid_size(self, space):
        assert len(space.grid(4)) == 3 * 4 * 4

    def test_fixed_jnr_collapses_axis(self):
        grid = ActionSpace(jnr_min=10.0, jnr_max=10.0).grid(5)
        assert len(grid) == 15
        np.testing.assert_array_equal(grid.jnr_points, [10.0])

    def test_points(self, space):
        grid = space.grid(4)
        np.testing.assert_allclose(grid.rho_points, [0.25, 0.5, 0.75, 1.0])
        np.testing.assert_allclose(grid.jnr_points, [25.75, 50.5, 75.25, 100.0])

    def test_ordering_is_scheme_jnr_rho(self, space):
        grid = space.grid(2)
        assert grid[0] == JammerAction(ModulationScheme.AWGN, 50.5, 0.5)
        assert grid[1] == JammerAction(ModulationScheme.AWGN, 50.5, 1.0)
        assert grid[2] == JammerAction(ModulationScheme.AWGN, 100.0, 0.5)
        assert grid[4].scheme is ModulationScheme.BPSK

    def test_arm_id_inverts_indices(self, space):
        grid = space.grid(3)
        for arm in range(len(grid)):
            assert grid.arm_id(*grid.indices(arm)) == arm

    def test_out_of_range_arm(self, space):
        with pytest.raises(IndexError):
            space.grid(2).action(12)

    def test_blocks_cover_grid(self, space):
        grid = space.grid(3)
        covered = []
        for scheme, arms, jnr, rho in grid.blocks():
            assert jnr.shape == rho.shape == (9,)
            covered.extend(range(len(grid))[arms])
            assert grid[arms.start].scheme is scheme
            assert grid[arms.start + 1].rho == rho[1]
        assert covered == list(range(len(grid)))

    def test_nearest_arm(self, space):
        grid = space.grid(10)
        arm = grid.nearest_arm("bpsk", 52.0, 0.33)
        action = grid[arm]
        assert action.scheme is ModulationScheme.BPSK
        assert action.rho == pytest.approx(0.3)
        assert action.jnr == pytest.approx(50.5)

    def test_describe(self):
        grid = ActionSpace(jnr_min=10.0, jnr_max=10.0).grid(4)
        assert grid.describe(5) == {"arm": 5, "scheme": "bpsk", "jnr_db": 10.0, "rho": 0.5}

    def test_grids_are_hashable(self, space):
        assert space.grid(3) == space.grid(3)
        assert len({space.grid(3), space.grid(3), space.grid(4)}) == 2
