"""Concentration half of the coupled system on [-1, 1].

Each species satisfies a steady drift-diffusion balance with blocking
boundaries and a prescribed total content:

    (c' + chi1 z c phi')' = 0,   c'(+-1) + chi1 z c(+-1) phi'(+-1) = 0,
    int_{-1}^{1} c = a.

With zero boundary flux the flux vanishes identically, so c'' = -chi1 z (c phi')'
feeds Green's identity.  Integrating the flux relation once and taking its
first moment yields two scalar equations whose solution gives the endpoint
concentrations in closed form; interior values are reconstructed from the
bracket plus a volume sum that telescopes exactly through the fundamental
theorem of calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._sums import kernel_g_sum, kernel_gx_sum
from .grid import Grid, trapezoid_sum
from .poisson import IonSpecies


@dataclass(frozen=True)
class ConcentrationBoundary:
    """Endpoint concentrations and their one-sided derivatives for one species."""

    c_p1: float
    c_m1: float
    dc_p1: float
    dc_m1: float


def solve_concentration_boundary(
    species: IonSpecies, chi1: float, grid: Grid, c: np.ndarray, dphi: np.ndarray
) -> ConcentrationBoundary:
    """Endpoint values from the integrated flux relation and the content constraint.

    Integrating c' = -chi1 z c phi' gives the endpoint difference; pairing the
    first moment of the same relation with int c = a gives the endpoint sum.
    Both right-hand sides use trapezoid sums of the current iterate.
    """
    zc = chi1 * species.z
    s0 = trapezoid_sum(grid, c * dphi)
    s1 = trapezoid_sum(grid, grid.x * c * dphi)
    diff = -zc * s0  # c(1) - c(-1)
    total = species.a - zc * s1  # c(1) + c(-1)
    c_p1 = 0.5 * (total + diff)
    c_m1 = 0.5 * (total - diff)
    return ConcentrationBoundary(
        c_p1=c_p1,
        c_m1=c_m1,
        dc_p1=-zc * c_p1 * dphi[-1],
        dc_m1=-zc * c_m1 * dphi[0],
    )


def _drift_increments(
    species: IonSpecies, chi1: float, c: np.ndarray, dphi: np.ndarray, bdry: ConcentrationBoundary
) -> np.ndarray:
    """Subinterval increments of chi1 z c phi', with endpoints made consistent.

    The volume integrand is (c phi')', integrated exactly over each
    subinterval by the fundamental theorem of calculus.  Endpoint entries of c
    are replaced by the freshly solved boundary values so the telescoped sum
    matches the bracket data.
    """
    u = c * dphi
    u[0] = bdry.c_m1 * dphi[0]
    u[-1] = bdry.c_p1 * dphi[-1]
    return chi1 * species.z * np.diff(u)


def concentration_interior(
    species: IonSpecies,
    chi1: float,
    grid: Grid,
    c: np.ndarray,
    dphi: np.ndarray,
    bdry: ConcentrationBoundary,
) -> np.ndarray:
    """Reconstruct the species concentration at every node."""
    x = grid.x
    inc = _drift_increments(species, chi1, c, dphi, bdry)
    bracket = (
        -0.5 * (1.0 - x) * bdry.dc_p1
        + 0.5 * (1.0 + x) * bdry.dc_m1
        + 0.5 * (bdry.c_p1 + bdry.c_m1)
    )
    c_new = bracket + kernel_g_sum(x, grid.mid, inc)
    c_new[0] = bdry.c_m1
    c_new[-1] = bdry.c_p1
    return c_new


def concentration_gradient_interior(
    species: IonSpecies,
    chi1: float,
    grid: Grid,
    c: np.ndarray,
    dphi: np.ndarray,
    bdry: ConcentrationBoundary,
) -> np.ndarray:
    """Reconstruct c' at every node; telescoping makes the no-flux relation exact."""
    inc = _drift_increments(species, chi1, c, dphi, bdry)
    dc = 0.5 * (bdry.dc_p1 + bdry.dc_m1) + kernel_gx_sum(grid.x, grid.mid, inc)
    dc[0] = bdry.dc_m1
    dc[-1] = bdry.dc_p1
    return dc
