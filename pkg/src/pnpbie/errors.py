"""Exception types shared across the solver modules."""


class PnpError(Exception):
    """Base class for all solver-specific errors."""


class ConfigError(PnpError):
    """Invalid problem, grid, or run configuration."""


class LinearSolveError(PnpError):
    """A boundary or interface linear system could not be solved."""


class NonConvergenceError(PnpError):
    """An iteration failed to reach the requested tolerance.

    Carries enough context to diagnose which stage stalled.
    """

    def __init__(self, message, stage=None, iterations=None, residuals=None):
        super().__init__(message)
        self.stage = stage
        self.iterations = iterations
        self.residuals = residuals


class DivergenceError(NonConvergenceError):
    """Non-finite values appeared during an iteration."""


class ConsistencyError(PnpError):
    """A converged solution violated a conservation or continuity check."""
