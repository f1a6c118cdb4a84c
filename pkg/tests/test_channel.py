"""Multi-subdomain channel solver: geometry, limits, conservation, regression."""

import dataclasses

import numpy as np
import pytest

from pnpbie.channel import (
    ION_VALENCES,
    MOLAR_PER_NM3,
    ChannelProblem,
    _poisson_matrix,
    build_channel,
    check_current_constancy,
    iv_sweep,
    poisson_stage,
    solve_channel,
)
from pnpbie.errors import ConfigError

# (left, right, radius, permittivity, per-species diffusivity, fixed charge e)
EXPECTED_REGIONS = (
    (0.0, 0.2, 0.5, 80.0, 0.4, -4.0),
    (0.2, 1.3, 0.5, 4.0, 0.4, 0.0),
    (1.3, 2.3, 0.5, 30.0, 0.4, -0.5),
    (2.3, 3.5, 0.5, 30.0, 0.5, -1.5),
)


@pytest.fixture(scope="module")
def coarse_problem():
    return build_channel(h=0.02)


@pytest.fixture(scope="module")
def coarse_solution(coarse_problem):
    return solve_channel(coarse_problem)


def zero_charge(problem, v_app_mv=None):
    subs = tuple(dataclasses.replace(s, rho_n=0.0) for s in problem.subdomains)
    kwargs = {"subdomains": subs}
    if v_app_mv is not None:
        kwargs["phi_right"] = -v_app_mv * 1e-3
    return dataclasses.replace(problem, **kwargs)


def test_geometry(coarse_problem):
    subs = coarse_problem.subdomains
    assert len(subs) == 44  # 20 bath pieces, 4 channel segments, 20 bath pieces
    assert subs[0].left == -5.0 and subs[-1].right == 8.5
    assert all(a.right == b.left for a, b in zip(subs, subs[1:]))
    assert max(s.grid.h.max() for s in subs) <= 0.02 + 1e-12
    for s, (left, right, radius, eps, diff, charge) in zip(subs[20:24], EXPECTED_REGIONS):
        assert (s.left, s.right, s.radius, s.epsilon) == (left, right, radius, eps)
        assert s.diffusion == (diff, diff)
        recovered = -s.rho_n * s.length * s.area * MOLAR_PER_NM3
        assert recovered == pytest.approx(charge, abs=1e-12)
    # Bath pieces carry no fixed charge and sample the wall-side radius, so
    # the first piece starts at the reservoir wall value on both sides.
    assert all(s.rho_n == 0.0 for s in subs[:20] + subs[24:])
    assert subs[0].radius == 5.5 and subs[-1].radius == 5.5
    assert subs[19].radius == pytest.approx(0.75)
    assert subs[24].radius == pytest.approx(0.75)


def test_builder_validation():
    with pytest.raises(ConfigError):
        build_channel(h=0.0)
    with pytest.raises(ConfigError):
        build_channel(bath_steps=0)
    prob = build_channel(h=0.05)
    with pytest.raises(ConfigError):
        dataclasses.replace(prob, ratios=(1.0, 10.0), omegas=(0.9, 0.4, 0.2))
    with pytest.raises(ConfigError):
        dataclasses.replace(prob, ratios=(1.0, 10.0, 5.0, 40.0))
    with pytest.raises(ConfigError):
        dataclasses.replace(prob, c_bath=-0.1)


def test_uncharged_unbiased_channel_is_trivial(coarse_problem):
    # No fixed charge and no applied voltage: the exact solution is zero
    # potential with bath concentration everywhere, and the iteration must
    # land on it immediately.
    sol = solve_channel(zero_charge(coarse_problem, v_app_mv=0.0))
    assert max(np.max(np.abs(p)) for p in sol.phi) == 0.0
    assert max(np.max(np.abs(ci - 0.15)) for sp in sol.c for ci in sp) < 1e-12
    assert abs(sol.current_pA) < 1e-10
    assert all(s.iterations == 1 for s in sol.stages)


def test_uncharged_potential_is_series_resistance(coarse_problem):
    # With zero net charge the potential is piecewise linear and the
    # "displacement current" eps * A * phi' is the same constant in every
    # subdomain: the applied drop divided by the series sum of ell/(eps A).
    problem = zero_charge(coarse_problem)
    lu = _poisson_matrix(problem)
    subs = problem.subdomains
    c_flat = tuple(
        tuple(np.full_like(s.grid.x, problem.c_bath) for s in subs) for _ in ION_VALENCES
    )
    _, dphi = poisson_stage(problem, lu, c_flat)
    drop = problem.phi_right - problem.phi_left
    f_exact = drop / sum(s.length / (s.epsilon * s.area) for s in subs)
    worst = max(np.max(np.abs(s.epsilon * s.area * d - f_exact)) for s, d in zip(subs, dphi))
    assert worst < 1e-10 * abs(f_exact)


def test_reference_current_and_schedule(coarse_solution):
    sol = coarse_solution
    assert sol.current_pA == pytest.approx(15.2710, abs=2e-3)
    assert sol.current_per_species_pA[0] == pytest.approx(0.33165, abs=1e-4)
    assert sol.current_per_species_pA[1] == pytest.approx(14.93939, abs=1e-3)
    assert [s.ratio for s in sol.stages] == [1.0, 10.0, 20.0, 40.0]
    assert [s.omega for s in sol.stages] == [0.9, 0.4, 0.26, 0.18]
    assert [s.iterations for s in sol.stages] == [12, 63, 147, 230]
    assert all(s.converged for s in sol.stages)


def test_solver_is_deterministic(coarse_problem, coarse_solution):
    again = solve_channel(coarse_problem)
    assert again.current_pA == coarse_solution.current_pA
    for a, b in zip(again.phi, coarse_solution.phi):
        assert np.array_equal(a, b)
    for sp_a, sp_b in zip(again.c, coarse_solution.c):
        for a, b in zip(sp_a, sp_b):
            assert np.array_equal(a, b)


def test_current_constant_across_nodes(coarse_problem, coarse_solution):
    assert check_current_constancy(coarse_problem, coarse_solution) < 1e-10


def test_interface_continuity(coarse_problem, coarse_solution):
    subs = coarse_problem.subdomains
    sol = coarse_solution
    beta = coarse_problem.ratios[-1]
    flux_scale = max(abs(f) for f in sol.flux)
    for k in range(len(subs) - 1):
        a, b = subs[k], subs[k + 1]
        assert abs(sol.phi[k][-1] - sol.phi[k + 1][0]) < 1e-12
        disp_a = a.epsilon * a.area * sol.dphi[k][-1]
        disp_b = b.epsilon * b.area * sol.dphi[k + 1][0]
        assert abs(disp_a - disp_b) < 1e-10 * max(abs(disp_a), 1e-3)
        for i, z in enumerate(ION_VALENCES):
            assert sol.c[i][k][-1] == sol.c[i][k + 1][0]
            flux_a = a.area * a.diffusion[i] * (
                sol.dc[i][k][-1] + beta * z * sol.c[i][k][-1] * sol.dphi[k][-1]
            )
            flux_b = b.area * b.diffusion[i] * (
                sol.dc[i][k + 1][0] + beta * z * sol.c[i][k + 1][0] * sol.dphi[k + 1][0]
            )
            assert abs(flux_a - flux_b) < 1e-10 * flux_scale


def test_concentrations_positive(coarse_solution):
    assert min(ci.min() for sp in coarse_solution.c for ci in sp) > 0.0


def test_unbiased_current_vanishes():
    # Equal baths and V = 0 is thermodynamic equilibrium; the computed current
    # is pure discretization residue and must be small at moderate spacing.
    sol = solve_channel(build_channel(h=0.01, v_app_mv=0.0))
    assert abs(sol.current_pA) < 1.5


def test_bath_partition_insensitivity():
    coarse = solve_channel(build_channel(h=0.01, bath_steps=20))
    fine = solve_channel(build_channel(h=0.01, bath_steps=40))
    assert abs(fine.current_pA - coarse.current_pA) < 0.01 * abs(coarse.current_pA)


def test_iv_sweep_entries():
    points = iv_sweep((40.0, 100.0), h=0.02)
    assert [p["v_app_mV"] for p in points] == [40.0, 100.0]
    for p in points:
        assert p["converged"]
        assert len(p["current_per_species_pA"]) == 2
        assert len(p["iterations"]) == 4
    assert points[1]["current_pA"] == pytest.approx(15.2710, abs=2e-3)
    assert points[0]["current_pA"] < points[1]["current_pA"]
