"""Integral-equation solver for the 1D steady-state Poisson-Nernst-Planck system.

The package solves the scaled two-species system on [-1, 1] with Robin
potential data, blocking (no-flux) concentration boundaries and prescribed
total ion content, and a dimensional multi-subdomain variant describing
permeation through a K+ channel with its flanking baths.
"""

from .errors import (
    ConfigError,
    ConsistencyError,
    DivergenceError,
    LinearSolveError,
    NonConvergenceError,
    PnpError,
)
from .grid import Grid, GridSpec, build_grid, trapezoid_sum
from .gummel import (
    ConvergenceReport,
    ConvergenceRow,
    FieldState,
    SolveReport,
    convergence_study,
    initial_state,
    solve,
)
from .poisson import IonSpecies, PotentialBoundary, SinglePnpProblem
from .nernst_planck import ConcentrationBoundary
from .channel import (
    ChannelProblem,
    ChannelSolution,
    Subdomain,
    build_channel,
    iv_sweep,
    solve_channel,
)
from . import presets

__all__ = [
    "ConfigError",
    "ConsistencyError",
    "DivergenceError",
    "LinearSolveError",
    "NonConvergenceError",
    "PnpError",
    "Grid",
    "GridSpec",
    "build_grid",
    "trapezoid_sum",
    "ConvergenceReport",
    "ConvergenceRow",
    "FieldState",
    "SolveReport",
    "convergence_study",
    "initial_state",
    "solve",
    "IonSpecies",
    "PotentialBoundary",
    "SinglePnpProblem",
    "ConcentrationBoundary",
    "ChannelProblem",
    "ChannelSolution",
    "Subdomain",
    "build_channel",
    "iv_sweep",
    "solve_channel",
    "presets",
]

__version__ = "0.1.0"
