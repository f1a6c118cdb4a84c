"""Potential half of the coupled system on [-1, 1].

The scaled Poisson equation

    -eps * phi'' = chi2 * (z1 c1 + z2 c2),      phi(+-1) +- eta phi'(+-1) = phi_pm

is recast through Green's identity into (i) a 4x4 linear system for the four
boundary unknowns phi(1), phi'(1), phi(-1), phi'(-1) and (ii) explicit
reconstruction formulas for phi and phi' at the interior nodes.  The two extra
rows of the 4x4 system come from integrating the equation once (a Gauss
relation for the jump of phi') and from Green's identity evaluated with the
first moment of the source.  All volume integrals use the kernel at
subinterval midpoints against trapezoid-averaged concentrations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._sums import kernel_g_sum
from .errors import ConfigError, LinearSolveError
from .grid import Grid, trapezoid_sum


@dataclass(frozen=True)
class IonSpecies:
    """One ionic species in scaled variables: valence, total content, diffusivity."""

    z: int
    a: float
    D: float = 1.0

    def __post_init__(self):
        if self.z not in (-1, 1):
            raise ConfigError(f"only monovalent species are supported, got z={self.z}")
        if self.a <= 0:
            raise ConfigError(f"total concentration must be positive, got a={self.a}")
        if self.D <= 0:
            raise ConfigError(f"diffusivity must be positive, got D={self.D}")


@dataclass(frozen=True)
class SinglePnpProblem:
    """Scaled two-species problem on [-1, 1] with Robin potential data."""

    chi1: float
    chi2: float
    epsilon: float
    eta: float
    phi_minus: float
    phi_plus: float
    species: tuple[IonSpecies, IonSpecies]
    omega: float
    tol: float = 1e-6
    max_iter: int = 50_000

    def __post_init__(self):
        if self.chi1 <= 0 or self.chi2 <= 0:
            raise ConfigError(f"chi1 and chi2 must be positive, got {self.chi1}, {self.chi2}")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.eta < 0:
            raise ConfigError(f"eta must be nonnegative, got {self.eta}")
        if len(self.species) != 2 or self.species[0].z + self.species[1].z != 0:
            raise ConfigError("expected exactly two species of opposite valence")
        if not 0 < self.omega <= 1:
            raise ConfigError(f"relaxation factor must lie in (0, 1], got {self.omega}")
        if self.tol <= 0 or self.max_iter < 1:
            raise ConfigError(f"bad stopping parameters tol={self.tol}, max_iter={self.max_iter}")


@dataclass(frozen=True)
class PotentialBoundary:
    """Solved boundary data: potential and its derivative at both endpoints."""

    phi_p1: float
    dphi_p1: float
    phi_m1: float
    dphi_m1: float


def concentration_moments(grid: Grid, c: np.ndarray) -> tuple[float, float]:
    """Trapezoid zeroth and first moments (int c, int x c) of a nodal field."""
    return trapezoid_sum(grid, c), trapezoid_sum(grid, grid.x * c)


def solve_potential_boundary(
    problem: SinglePnpProblem, moments: tuple[tuple[float, float], tuple[float, float]]
) -> PotentialBoundary:
    """Solve the 4x4 system for the boundary potential unknowns.

    ``moments`` holds (int c_i, int x c_i) for each species, recomputed from
    the current concentration iterate.
    """
    eta = problem.eta
    coef = problem.chi2 / problem.epsilon
    charge0 = sum(s.z * m[0] for s, m in zip(problem.species, moments))
    charge1 = sum(s.z * m[1] for s, m in zip(problem.species, moments))
    # Unknowns ordered [phi(1), phi'(1), phi(-1), phi'(-1)].
    lhs = np.array(
        [
            [1.0, eta, 0.0, 0.0],
            [0.0, 0.0, 1.0, -eta],
            [0.0, 1.0, 0.0, -1.0],
            [1.0, -1.0, -1.0, -1.0],
        ]
    )
    rhs = np.array(
        [
            problem.phi_plus,
            problem.phi_minus,
            -coef * charge0,
            coef * charge1,
        ]
    )
    try:
        sol = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise LinearSolveError(f"singular potential boundary system (eta={eta})") from exc
    return PotentialBoundary(phi_p1=sol[0], dphi_p1=sol[1], phi_m1=sol[2], dphi_m1=sol[3])


def _charge_subinterval_weights(problem: SinglePnpProblem, grid: Grid, c1, c2) -> np.ndarray:
    """(chi2/eps) * z.c averaged over each subinterval, times its length."""
    charge = problem.species[0].z * c1 + problem.species[1].z * c2
    return (problem.chi2 / problem.epsilon) * 0.5 * (charge[:-1] + charge[1:]) * grid.h


def centered_gradient(grid: Grid, phi: np.ndarray, dphi_left: float, dphi_right: float) -> np.ndarray:
    """Second-order gradient of a nodal field: centered differences inside,
    prescribed one-sided values at the ends."""
    dphi = np.empty_like(phi)
    dphi[1:-1] = (phi[2:] - phi[:-2]) / (grid.h[:-1] + grid.h[1:])
    dphi[0] = dphi_left
    dphi[-1] = dphi_right
    return dphi


def potential_gradient_interior(
    problem: SinglePnpProblem,
    grid: Grid,
    c1: np.ndarray,
    c2: np.ndarray,
    bdry: PotentialBoundary,
) -> np.ndarray:
    """phi' at every node: centered differences of the reconstructed potential,
    endpoint values from the boundary solve.

    Differentiating the reconstruction instead of applying the g_x quadrature
    directly halves the kernel weight on the two subintervals next to each
    node.  Both forms are second-order consistent, but the differenced form
    damps the highest-wavenumber response of the update map, which keeps the
    relaxed iteration contractive on stiff non-electroneutral problems.
    """
    phi = potential_interior(problem, grid, c1, c2, bdry)
    return centered_gradient(grid, phi, bdry.dphi_m1, bdry.dphi_p1)


def potential_interior(
    problem: SinglePnpProblem,
    grid: Grid,
    c1: np.ndarray,
    c2: np.ndarray,
    bdry: PotentialBoundary,
) -> np.ndarray:
    """Reconstruct phi at every node from boundary data and the charge field."""
    x = grid.x
    q = _charge_subinterval_weights(problem, grid, c1, c2)
    bracket = (
        -0.5 * (1.0 - x) * bdry.dphi_p1
        + 0.5 * (1.0 + x) * bdry.dphi_m1
        + 0.5 * (bdry.phi_p1 + bdry.phi_m1)
    )
    phi = bracket + kernel_g_sum(x, grid.mid, q)
    phi[0] = bdry.phi_m1
    phi[-1] = bdry.phi_p1
    return phi
