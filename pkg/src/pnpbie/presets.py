"""Built-in parameter sets for the bundled test problems.

Single-domain presets cover the scaled two-species system on [-1, 1]:

  * case1.1 / case1.2 -- electroneutral content (a1 = a2 = 1), antisymmetric
    potential data, moderate and small permittivity.
  * case2.1 / case2.2 -- the same system intended for capacitance (eta)
    sweeps; eta defaults to epsilon and is meant to be overridden.
  * case3     -- electroneutral with unequal mobilities and a large coupling
    chi2, the hardest single-domain configuration.
  * case4.1 / case4.2 -- non-electroneutral content (a1 = 1, a2 = 2) with
    equal potential data on both ends.

chi2 is stored explicitly rather than derived from epsilon so that a dumped
config is self-describing.  The relaxation factors are the largest values
(in 0.1/0.01 steps) observed to converge reliably at N = 400; case3 in
particular needs omega ~ 0.09 even though the iteration it settles into is
insensitive to omega.

The "kchannel" preset builds the dimensional multi-subdomain channel problem;
its physical constants live in :mod:`pnpbie.channel`.
"""

from __future__ import annotations

from .channel import ChannelProblem, build_channel
from .errors import ConfigError
from .poisson import IonSpecies, SinglePnpProblem

# Constructor keyword arguments per preset; species tuples are (z, a, D).
SINGLE_DOMAIN: dict[str, dict] = {
    "case1.1": dict(
        chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
        phi_minus=-1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 1.0, 1.0)),
        omega=0.7,
    ),
    "case1.2": dict(
        chi1=1.0, chi2=64.0, epsilon=1.0 / 64.0, eta=1.0 / 64.0,
        phi_minus=-1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 1.0, 1.0)),
        omega=0.09,
    ),
    "case2.1": dict(
        chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
        phi_minus=-1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 1.0, 1.0)),
        omega=0.7,
    ),
    "case2.2": dict(
        chi1=1.0, chi2=64.0, epsilon=1.0 / 64.0, eta=1.0 / 64.0,
        phi_minus=-1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 1.0, 1.0)),
        omega=0.09,
    ),
    "case3": dict(
        chi1=3.1, chi2=125.4, epsilon=1.0, eta=4.63e-5,
        phi_minus=1.0, phi_plus=-1.0,
        species=((-1, 2.0, 1.0), (1, 2.0, 1.0)),
        omega=0.09,
    ),
    "case4.1": dict(
        chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
        phi_minus=1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 2.0, 1.0)),
        omega=0.6,
    ),
    "case4.2": dict(
        chi1=1.0, chi2=16.0, epsilon=1.0 / 16.0, eta=1.0 / 16.0,
        phi_minus=1.0, phi_plus=1.0,
        species=((-1, 1.0, 1.0), (1, 2.0, 1.0)),
        # 0.16 is faster from N = 100 up but blows up on the N = 50
        # Chebyshev grid; 0.14 converges across the whole doubling range.
        omega=0.14,
    ),
}

# Keyword arguments accepted by build_channel.
CHANNEL: dict[str, dict] = {
    "kchannel": dict(h=0.01, bath_steps=20, v_app_mv=100.0, c_bath=0.15),
}


def names() -> tuple[str, ...]:
    return tuple(SINGLE_DOMAIN) + tuple(CHANNEL)


def kind(name: str) -> str:
    """'single' or 'channel'; raises ConfigError for unknown names."""
    if name in SINGLE_DOMAIN:
        return "single"
    if name in CHANNEL:
        return "channel"
    raise ConfigError(f"unknown preset {name!r}; available: {', '.join(names())}")


def single_domain(name: str, **overrides) -> SinglePnpProblem:
    """Instantiate a single-domain preset, optionally overriding fields.

    Overrides use SinglePnpProblem field names; ``species`` may be given as
    a pair of (z, a, D) tuples.
    """
    if name not in SINGLE_DOMAIN:
        raise ConfigError(
            f"unknown single-domain preset {name!r}; available: {', '.join(SINGLE_DOMAIN)}"
        )
    params = dict(SINGLE_DOMAIN[name])
    unknown = set(overrides) - set(params) - {"tol", "max_iter"}
    if unknown:
        raise ConfigError(f"unknown fields for preset {name!r}: {', '.join(sorted(unknown))}")
    params.update(overrides)
    species = tuple(
        s if isinstance(s, IonSpecies) else IonSpecies(*s) for s in params.pop("species")
    )
    return SinglePnpProblem(species=species, **params)


def channel(name: str = "kchannel", **overrides) -> ChannelProblem:
    """Instantiate a channel preset, optionally overriding build arguments."""
    if name not in CHANNEL:
        raise ConfigError(f"unknown channel preset {name!r}; available: {', '.join(CHANNEL)}")
    params = dict(CHANNEL[name])
    unknown = set(overrides) - set(params)
    if unknown:
        raise ConfigError(f"unknown fields for preset {name!r}: {', '.join(sorted(unknown))}")
    params.update(overrides)
    return build_channel(**params)
