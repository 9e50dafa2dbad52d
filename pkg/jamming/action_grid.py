"""
Action Grid Module

Uniform discretization of the mixed jammer action space: a finite set of
signaling schemes times the continuous (JNR, rho) box. A grid of resolution
M keeps the points {1/M, ..., 1} on each normalized axis, so every scheme
contributes M^2 arms (M when the JNR range is a single value).
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from models.link_simulator import JammerAction
from models.modulation import JAMMER_SCHEMES, ModulationScheme
from utils.errors import ArmBudgetError
from utils.units import linear_to_db

logger = logging.getLogger(__name__)

DEFAULT_ARM_BUDGET = 200_000


@dataclass(frozen=True)
class ActionSpace:
    """Continuous action space of the jammer.

    Attributes:
        schemes (tuple): Jamming signaling schemes.
        jnr_min (float): Smallest average JNR (linear, at least 1).
        jnr_max (float): Largest average JNR (linear).
    """

    schemes: tuple = JAMMER_SCHEMES
    jnr_min: float = 1.0
    jnr_max: float = 100.0

    def __post_init__(self):
        schemes = tuple(ModulationScheme.parse(s) for s in self.schemes)
        if not schemes:
            raise ValueError("the jammer needs at least one signaling scheme")
        if len(set(schemes)) != len(schemes):
            raise ValueError("duplicate jamming schemes")
        object.__setattr__(self, "schemes", schemes)
        if self.jnr_min < 1.0:
            raise ValueError(f"jnr_min must be at least 1 (0 dB), got {self.jnr_min}")
        if self.jnr_max < self.jnr_min:
            raise ValueError("jnr_max must not be below jnr_min")

    @property
    def fixed_jnr(self):
        return self.jnr_max == self.jnr_min

    def normalize_jnr(self, jnr):
        """Map JNR affinely so that jnr_max -> 1 and jnr_min -> 0."""
        if self.fixed_jnr:
            return np.ones_like(np.asarray(jnr, dtype=float))
        return (np.asarray(jnr, dtype=float) - self.jnr_min) / (self.jnr_max - self.jnr_min)

    def grid(self, m, arm_budget=DEFAULT_ARM_BUDGET):
        """Discretize with resolution ``m``.

        Raises:
            ArmBudgetError: If the grid would exceed ``arm_budget`` arms.
        """
        jnr_count = 1 if self.fixed_jnr else m
        n_arms = len(self.schemes) * jnr_count * m
        if arm_budget is not None and n_arms > arm_budget:
            raise ArmBudgetError(f"grid with M={m} has {n_arms} arms, budget is {arm_budget}")
        return ActionGrid(self, m)


@dataclass(frozen=True)
class ActionGrid:
    """Discretized arms, ordered by scheme, then JNR, then rho."""

    space: ActionSpace
    m: int
    rho_points: np.ndarray = field(init=False, repr=False, compare=False)
    jnr_points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"grid resolution must be at least 1, got {self.m}")
        steps = np.arange(1, self.m + 1) / self.m
        object.__setattr__(self, "rho_points", steps)
        if self.space.fixed_jnr:
            jnr = np.array([self.space.jnr_min])
        else:
            jnr = self.space.jnr_min + (self.space.jnr_max - self.space.jnr_min) * steps
        object.__setattr__(self, "jnr_points", jnr)

    @property
    def schemes(self):
        return self.space.schemes

    @property
    def arms_per_scheme(self):
        return len(self.jnr_points) * len(self.rho_points)

    def __len__(self):
        return len(self.schemes) * self.arms_per_scheme

    def __getitem__(self, arm):
        return self.action(arm)

    def indices(self, arm):
        """(scheme index, JNR index, rho index) of an arm."""
        if not 0 <= arm < len(self):
            raise IndexError(f"arm {arm} outside a grid of {len(self)} arms")
        scheme_index, rest = divmod(int(arm), self.arms_per_scheme)
        jnr_index, rho_index = divmod(rest, len(self.rho_points))
        return scheme_index, jnr_index, rho_index

    def arm_id(self, scheme_index, jnr_index, rho_index):
        return (scheme_index * len(self.jnr_points) + jnr_index) * len(self.rho_points) + rho_index

    def action(self, arm):
        scheme_index, jnr_index, rho_index = self.indices(arm)
        return JammerAction(self.schemes[scheme_index], float(self.jnr_points[jnr_index]),
                            float(self.rho_points[rho_index]))

    def actions(self):
        return [self.action(arm) for arm in range(len(self))]

    def blocks(self):
        """Yield ``(scheme, arm slice, jnr array, rho array)`` per scheme."""
        jnr, rho = np.meshgrid(self.jnr_points, self.rho_points, indexing="ij")
        jnr, rho = jnr.ravel(), rho.ravel()
        size = self.arms_per_scheme
        for index, scheme in enumerate(self.schemes):
            yield scheme, slice(index * size, (index + 1) * size), jnr, rho

    def normalized_points(self):
        """Arm coordinates (normalized JNR, rho) shared by every scheme."""
        jnr, rho = np.meshgrid(self.space.normalize_jnr(self.jnr_points), self.rho_points,
                               indexing="ij")
        return np.column_stack([jnr.ravel(), rho.ravel()])

    def nearest_arm(self, scheme, jnr, rho):
        """Grid arm of ``scheme`` closest to (jnr, rho) in normalized coordinates."""
        scheme_index = self.schemes.index(ModulationScheme.parse(scheme))
        target = np.array([float(self.space.normalize_jnr(jnr)), rho])
        offset = int(np.argmin(np.linalg.norm(self.normalized_points() - target, axis=1)))
        return scheme_index * self.arms_per_scheme + offset

    def describe(self, arm):
        """Plain record of an arm for reports."""
        action = self.action(arm)
        return {"arm": int(arm), "scheme": action.scheme.value,
                "jnr_db": round(float(linear_to_db(action.jnr)), 4), "rho": round(action.rho, 6)}
