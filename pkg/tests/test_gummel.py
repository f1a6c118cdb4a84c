"""Fixed-point driver: convergence behavior, reporting, and regressions."""

import math

import numpy as np
import pytest

from pnpbie import presets
from pnpbie.errors import DivergenceError, NonConvergenceError
from pnpbie.grid import GridSpec, build_grid, trapezoid_sum
from pnpbie.gummel import convergence_study, initial_state, solve


def test_initial_state_shapes():
    prob = presets.single_domain("case1.1")
    grid = build_grid(GridSpec("uniform", 20))
    state = initial_state(prob, grid)
    assert state.phi.shape == (21,)
    assert np.all(state.phi == 0.0)
    assert np.all(state.dphi == 0.5 * (prob.phi_plus - prob.phi_minus))
    for s, ci in zip(prob.species, state.c):
        assert np.all(ci == 0.5 * s.a)


def test_case11_chebyshev_solve():
    prob = presets.single_domain("case1.1")
    grid = build_grid(GridSpec("chebyshev", 100))
    state, report = solve(prob, grid)
    assert report.converged
    assert report.iterations == 17
    assert report.residual_dphi < prob.tol and report.residual_c < prob.tol
    assert report.positivity_violations == 0
    # Boundary data: Robin condition on the reported fields.
    assert state.phi[-1] + prob.eta * state.dphi[-1] == pytest.approx(prob.phi_plus, abs=1e-12)
    assert state.phi[0] - prob.eta * state.dphi[0] == pytest.approx(prob.phi_minus, abs=1e-12)
    # Antisymmetric data on a symmetric grid: phi odd, species mirror images.
    assert np.max(np.abs(state.phi + state.phi[::-1])) < 1e-5
    assert np.max(np.abs(state.c[0] - state.c[1][::-1])) < 1e-5
    # Blocking-flux balance holds to rounding on the finalized fields.
    for s, ci, dci in zip(prob.species, state.c, state.dc):
        resid = dci + prob.chi1 * s.z * ci * state.dphi
        assert np.max(np.abs(resid)) < 1e-12
        assert trapezoid_sum(grid, ci) == pytest.approx(s.a, abs=1e-3)
        assert ci.min() > 0.0


def test_solve_is_deterministic():
    prob = presets.single_domain("case1.1")
    grid = build_grid(GridSpec("chebyshev", 50))
    state_a, _ = solve(prob, grid)
    state_b, _ = solve(prob, grid)
    assert np.array_equal(state_a.phi, state_b.phi)
    assert np.array_equal(state_a.dphi, state_b.dphi)
    for ca, cb in zip(state_a.c, state_b.c):
        assert np.array_equal(ca, cb)


def test_max_iter_reported_without_exception():
    prob = presets.single_domain("case1.1", max_iter=5)
    grid = build_grid(GridSpec("chebyshev", 50))
    _, report = solve(prob, grid)
    assert not report.converged
    assert report.iterations == 5


def test_stiff_uniform_grid_diverges():
    # The small-permittivity preset on a coarse equispaced grid blows up; the
    # error carries the step at which the update went non-finite.
    prob = presets.single_domain("case1.2")
    grid = build_grid(GridSpec("uniform", 50))
    with pytest.raises(DivergenceError) as exc_info:
        solve(prob, grid)
    assert isinstance(exc_info.value, NonConvergenceError)
    assert exc_info.value.iterations == 39


def test_mini_doubling_study_case11():
    rep = convergence_study(presets.single_domain("case1.1"), "chebyshev", (50, 100))
    assert rep.family == "chebyshev"
    assert [r.n for r in rep.rows] == [50, 100]
    assert [r.iterations for r in rep.rows] == [16, 17]
    assert all(r.converged for r in rep.rows)
    assert rep.rows[0].error == pytest.approx(1.4696e-3, rel=1e-3)
    assert rep.rows[1].error == pytest.approx(3.6885e-4, rel=1e-3)
    assert math.isnan(rep.rows[0].rate)
    assert rep.rows[1].rate == pytest.approx(1.994, abs=0.01)


def test_study_keeps_diverged_rows():
    prob = presets.single_domain("case1.2", omega=0.9)  # deliberately too aggressive
    rep = convergence_study(prob, "chebyshev", (50,))
    row = rep.rows[0]
    assert not row.converged
    assert math.isnan(row.error) and math.isnan(row.rate)
    assert row.iterations == 6


def test_study_requires_doubling():
    with pytest.raises(ValueError):
        convergence_study(presets.single_domain("case1.1"), "uniform", (50, 75))
