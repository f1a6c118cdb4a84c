"""Free-space kernel of the 1D Laplacian and Green's-identity bracket terms.

The kernel g(x, y) = -|x - y| / 2 satisfies d2g/dx2 = -delta(x - y).  Green's
third identity on an interval [l, r] represents any twice-differentiable f as

    f(x) = [g(x, y) f'(y) - g_y(x, y) f(y)]_{y=l}^{r} - int_l^r g(x, y) f''(y) dy

for l < x < r.  The bracketed boundary term and its x-derivative are what the
potential and concentration operators evaluate at every interior node; the
volume integral carries the PDE right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass


def g(x: float, y: float) -> float:
    """Kernel value -|x - y| / 2."""
    return -abs(x - y) / 2.0


def g_x(x: float, y: float) -> float:
    """d/dx of the kernel; undefined on the diagonal."""
    if x == y:
        raise ValueError(f"g_x is singular at coincident points x = y = {x}")
    return -0.5 if x > y else 0.5


def g_y(x: float, y: float) -> float:
    """d/dy of the kernel; undefined on the diagonal."""
    if x == y:
        raise ValueError(f"g_y is singular at coincident points x = y = {x}")
    return 0.5 if x > y else -0.5


def g_xy(x: float, y: float) -> float:
    """Mixed second derivative; identically zero away from the diagonal."""
    if x == y:
        raise ValueError(f"g_xy is singular at coincident points x = y = {x}")
    return 0.0


@dataclass(frozen=True)
class BracketData:
    """Endpoint values and one-sided derivatives of a field on [left, right]."""

    left: float
    right: float
    f_left: float
    f_right: float
    df_left: float
    df_right: float

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError(f"empty interval [{self.left}, {self.right}]")


def _check_interior(data: BracketData, x: float) -> None:
    if not data.left < x < data.right:
        raise ValueError(f"x={x} is not interior to [{data.left}, {data.right}]")


def bracket_value(data: BracketData, x: float) -> float:
    """Boundary bracket of Green's identity at an interior point x."""
    _check_interior(data, x)
    return (
        g(x, data.right) * data.df_right
        - g(x, data.left) * data.df_left
        - g_y(x, data.right) * data.f_right
        + g_y(x, data.left) * data.f_left
    )


def bracket_gradient(data: BracketData, x: float) -> float:
    """x-derivative of the boundary bracket at an interior point x.

    Because g_xy vanishes off the diagonal this reduces to the mean of the two
    endpoint derivatives, independent of x.
    """
    _check_interior(data, x)
    return (
        g_x(x, data.right) * data.df_right
        - g_x(x, data.left) * data.df_left
        - g_xy(x, data.right) * data.f_right
        + g_xy(x, data.left) * data.f_left
    )
