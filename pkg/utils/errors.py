"""
Error Types

Exceptions shared by the simulation, learning and harness packages.
"""


class JammingError(Exception):
    """Base class for all errors raised by this project."""


class ConfigError(JammingError):
    """Raised when an experiment configuration is invalid.

    Every violation found is kept so the caller can report them together.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class QuadratureError(JammingError):
    """Raised when a numerical error-rate integral does not converge."""


class ArmBudgetError(JammingError):
    """Raised when a discretized action grid exceeds the configured arm budget."""


class InfeasiblePlanError(JammingError):
    """Raised when a jamming budget cannot be met (achieved PER of zero)."""


class DiscretizationWarning(UserWarning):
    """Issued when the elimination discretization root is not bracketed."""
