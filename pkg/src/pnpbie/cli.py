"""Command-line front end: presets, JSON configs, CSV/JSON artifacts.

Subcommands
-----------
solve     one single-domain or channel solve from a preset and/or JSON config
converge  grid-doubling self-convergence table for a single-domain preset
channel   K+ channel solve with geometry/voltage flags
iv        current-voltage sweep of the channel

Configs are JSON objects with a top-level "preset" plus field-level
overrides; unknown keys are rejected.  Profiles are CSV with the fixed
header ``domain_index,x,phi,dphi,c1,c2,dc1,dc2`` and shortest round-trip
float formatting, so identical runs produce byte-identical files.  Summaries
are JSON with one fixed key set for every subcommand; keys that do not
apply hold null.  Channel profiles and summaries report the potential in mV
(concentrations in molar); single-domain runs are dimensionless.

Exit codes: 0 success, 2 configuration error, 3 non-convergence,
4 numerical-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import presets
from .channel import ChannelSolution, iv_sweep, solve_channel
from .errors import (
    ConfigError,
    ConsistencyError,
    LinearSolveError,
    NonConvergenceError,
    PnpError,
)
from .grid import GridSpec, build_grid, trapezoid_sum
from .gummel import convergence_study, solve

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_CONSISTENCY = 4

PROFILE_HEADER = ("domain_index", "x", "phi", "dphi", "c1", "c2", "dc1", "dc2")

SUMMARY_KEYS = (
    "converged",
    "iterations",
    "residual_dphi",
    "residual_c",
    "phi_bounds",
    "c_bounds",
    "total_concentration_residuals",
    "rates",
    "current_pA",
    "current_per_species_pA",
    "wall_time_s",
)


def _jsonable(value):
    """Recursively convert numpy scalars/arrays and NaN to JSON-safe values."""
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _summary(**fields) -> dict:
    out = {key: None for key in SUMMARY_KEYS}
    unknown = set(fields) - set(SUMMARY_KEYS)
    if unknown:
        raise ValueError(f"not summary keys: {unknown}")
    out.update(fields)
    return _jsonable(out)


def _write_summary(summary: dict, path: str | None) -> None:
    text = json.dumps(summary, indent=2, allow_nan=False) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_profile(rows, path: str | None) -> None:
    """Rows are (domain_index, x, phi, dphi, c1, c2, dc1, dc2) tuples."""
    if path is None:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PROFILE_HEADER)
        for row in rows:
            writer.writerow([repr(int(row[0]))] + [repr(float(v)) for v in row[1:]])


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return cfg


def _single_profile(grid, state):
    for j in range(grid.x.size):
        yield (0, grid.x[j], state.phi[j], state.dphi[j],
               state.c[0][j], state.c[1][j], state.dc[0][j], state.dc[1][j])


def _channel_profile(solution: ChannelSolution):
    # Potentials in mV, gradients in mV/nm; interface nodes appear once per
    # adjacent subdomain.
    for k, s in enumerate(solution.subdomains):
        for j in range(s.grid.x.size):
            yield (k, s.grid.x[j],
                   1e3 * solution.phi[k][j], 1e3 * solution.dphi[k][j],
                   solution.c[0][k][j], solution.c[1][k][j],
                   solution.dc[0][k][j], solution.dc[1][k][j])


def _channel_summary(solution: ChannelSolution) -> dict:
    phis = np.concatenate([1e3 * p for p in solution.phi])
    c_bounds = []
    for i in range(2):
        ci = np.concatenate(solution.c[i])
        c_bounds.append([float(ci.min()), float(ci.max())])
    last = solution.stages[-1]
    return _summary(
        converged=all(st.converged for st in solution.stages),
        iterations=[st.iterations for st in solution.stages],
        residual_dphi=last.residual_dphi,
        residual_c=last.residual_c,
        phi_bounds=[float(phis.min()), float(phis.max())],
        c_bounds=c_bounds,
        current_pA=solution.current_pA,
        current_per_species_pA=list(solution.current_per_species_pA),
        wall_time_s=solution.wall_time,
    )


def _pop_grid(cfg: dict) -> GridSpec:
    grid_cfg = cfg.pop("grid", {})
    if not isinstance(grid_cfg, dict):
        raise ConfigError('"grid" must be an object like {"family": ..., "n": ...}')
    unknown = set(grid_cfg) - {"family", "n"}
    if unknown:
        raise ConfigError(f"unknown grid keys: {', '.join(sorted(unknown))}")
    return GridSpec(
        family=grid_cfg.get("family", "chebyshev"),
        n=int(grid_cfg.get("n", 100)),
    )


def cmd_solve(args) -> int:
    cfg = _load_config(args.config)
    name = args.preset or cfg.pop("preset", None)
    if not name:
        raise ConfigError("no preset given (use --preset or a 'preset' config key)")
    cfg.pop("preset", None)  # --preset wins over the config key
    if presets.kind(name) == "channel":
        problem = presets.channel(name, **cfg)
        solution = solve_channel(problem)
        _write_profile(_channel_profile(solution), args.profile)
        _write_summary(_channel_summary(solution), args.summary)
        return EXIT_OK

    spec = _pop_grid(cfg)
    problem = presets.single_domain(name, **cfg)
    grid = build_grid(spec)
    state, report = solve(problem, grid)
    if not report.converged:
        raise NonConvergenceError(
            f"{name} did not converge in {report.iterations} iterations "
            f"(residuals {report.residual_dphi:.3e}, {report.residual_c:.3e})",
            iterations=report.iterations,
            residuals=(report.residual_dphi, report.residual_c),
        )
    residuals = [
        abs(trapezoid_sum(grid, ci) - s.a) for ci, s in zip(state.c, problem.species)
    ]
    summary = _summary(
        converged=report.converged,
        iterations=report.iterations,
        residual_dphi=report.residual_dphi,
        residual_c=report.residual_c,
        phi_bounds=[float(state.phi.min()), float(state.phi.max())],
        c_bounds=[[float(ci.min()), float(ci.max())] for ci in state.c],
        total_concentration_residuals=residuals,
        wall_time_s=report.wall_time,
    )
    _write_profile(_single_profile(grid, state), args.profile)
    _write_summary(summary, args.summary)
    return EXIT_OK


def cmd_converge(args) -> int:
    if presets.kind(args.preset) != "single":
        raise ConfigError("converge applies to single-domain presets only")
    try:
        n_list = tuple(int(tok) for tok in args.grids.split(","))
    except ValueError:
        raise ConfigError(f"--grids must be comma-separated integers, got {args.grids!r}") from None
    problem = presets.single_domain(args.preset)
    start = time.perf_counter()
    try:
        report = convergence_study(problem, args.points, n_list)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    wall = time.perf_counter() - start

    print(f"# {args.preset}, {args.points} points")
    print(f"{'N':>6} {'iter':>6} {'error':>12} {'rate':>8}")
    for row in report.rows:
        err = f"{row.error:.3e}" if math.isfinite(row.error) else "nc"
        rate = f"{row.rate:.3f}" if math.isfinite(row.rate) else ""
        print(f"{row.n:>6} {row.iterations:>6} {err:>12} {rate:>8}")
    summary = _summary(
        converged=all(row.converged for row in report.rows),
        iterations=[row.iterations for row in report.rows],
        rates=[row.rate for row in report.rows],
        wall_time_s=wall,
    )
    if args.summary:
        _write_summary(summary, args.summary)
    return EXIT_OK


def cmd_channel(args) -> int:
    overrides = {}
    if args.h is not None:
        overrides["h"] = args.h
    if args.vapp is not None:
        overrides["v_app_mv"] = args.vapp
    if args.bath_steps is not None:
        overrides["bath_steps"] = args.bath_steps
    if args.cbath is not None:
        overrides["c_bath"] = args.cbath
    problem = presets.channel(args.preset, **overrides)
    solution = solve_channel(problem)
    _write_profile(_channel_profile(solution), args.profile)
    _write_summary(_channel_summary(solution), args.summary)
    return EXIT_OK


def cmd_iv(args) -> int:
    if presets.kind(args.preset) != "channel":
        raise ConfigError("iv applies to channel presets only")
    if args.steps < 2:
        raise ConfigError(f"--steps must be at least 2, got {args.steps}")
    voltages = np.linspace(args.vmin, args.vmax, args.steps)
    start = time.perf_counter()
    points = iv_sweep(voltages, h=args.h)
    wall = time.perf_counter() - start

    print(f"{'V_app [mV]':>12} {'I [pA]':>12} {'Cl [pA]':>10} {'K [pA]':>10}")
    for entry in points:
        if entry["converged"]:
            i1, i2 = entry["current_per_species_pA"]
            print(f"{entry['v_app_mV']:>12.2f} {entry['current_pA']:>12.4f} {i1:>10.4f} {i2:>10.4f}")
        else:
            print(f"{entry['v_app_mV']:>12.2f} {'nc':>12}")
    summary = _summary(
        converged=all(e["converged"] for e in points),
        iterations=[e.get("iterations") for e in points],
        current_pA=[e.get("current_pA") for e in points],
        current_per_species_pA=[e.get("current_per_species_pA") for e in points],
        wall_time_s=wall,
    )
    if args.summary:
        _write_summary(summary, args.summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnpbie",
        description="Integral-equation solver for 1D steady-state Poisson-Nernst-Planck systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one solve from a preset/config")
    p_solve.add_argument("--config", help="JSON config with 'preset' plus overrides")
    p_solve.add_argument("--preset", choices=presets.names(), help="preset name (overrides config)")
    p_solve.add_argument("--profile", help="write per-node CSV profile here")
    p_solve.add_argument("--summary", help="write summary JSON here (default: stdout)")
    p_solve.set_defaults(func=cmd_solve)

    p_conv = sub.add_parser("converge", help="grid-doubling convergence table")
    p_conv.add_argument("--preset", required=True, choices=tuple(presets.SINGLE_DOMAIN))
    p_conv.add_argument("--points", choices=("uniform", "chebyshev"), default="chebyshev")
    p_conv.add_argument("--grids", default="50,100,200,400", help="comma-separated doubling N list")
    p_conv.add_argument("--summary", help="write summary JSON here")
    p_conv.set_defaults(func=cmd_converge)

    p_chan = sub.add_parser("channel", help="K+ channel solve")
    p_chan.add_argument("--preset", default="kchannel", choices=tuple(presets.CHANNEL))
    p_chan.add_argument("--h", type=float, help="grid spacing in nm (default 0.01)")
    p_chan.add_argument("--vapp", type=float, help="applied voltage in mV (default 100)")
    p_chan.add_argument("--bath-steps", type=int, help="radius steps per bath (default 20)")
    p_chan.add_argument("--cbath", type=float, help="bath concentration in molar (default 0.15)")
    p_chan.add_argument("--profile", help="write per-node CSV profile here")
    p_chan.add_argument("--summary", help="write summary JSON here (default: stdout)")
    p_chan.set_defaults(func=cmd_channel)

    p_iv = sub.add_parser("iv", help="current-voltage sweep")
    p_iv.add_argument("--preset", default="kchannel", choices=tuple(presets.CHANNEL))
    p_iv.add_argument("--vmin", type=float, default=-100.0)
    p_iv.add_argument("--vmax", type=float, default=100.0)
    p_iv.add_argument("--steps", type=int, default=21)
    p_iv.add_argument("--h", type=float, default=0.01)
    p_iv.add_argument("--summary", help="write summary JSON here")
    p_iv.set_defaults(func=cmd_iv)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ConsistencyError, LinearSolveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except PnpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
