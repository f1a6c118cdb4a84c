"""Preset catalog pinned against the documented parameter sets."""

import math

import pytest

from pnpbie import presets
from pnpbie.errors import ConfigError

# Expected constructor parameters, spelled out independently of the catalog
# module so an accidental edit there fails here.
EXPECTED_SINGLE = {
    "case1.1": dict(chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
                    phi_minus=-1.0, phi_plus=1.0, a=(1.0, 1.0)),
    "case1.2": dict(chi1=1.0, chi2=64.0, epsilon=1 / 64, eta=1 / 64,
                    phi_minus=-1.0, phi_plus=1.0, a=(1.0, 1.0)),
    "case2.1": dict(chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
                    phi_minus=-1.0, phi_plus=1.0, a=(1.0, 1.0)),
    "case2.2": dict(chi1=1.0, chi2=64.0, epsilon=1 / 64, eta=1 / 64,
                    phi_minus=-1.0, phi_plus=1.0, a=(1.0, 1.0)),
    "case3": dict(chi1=3.1, chi2=125.4, epsilon=1.0, eta=4.63e-5,
                  phi_minus=1.0, phi_plus=-1.0, a=(2.0, 2.0)),
    "case4.1": dict(chi1=1.0, chi2=4.0, epsilon=0.25, eta=0.25,
                    phi_minus=1.0, phi_plus=1.0, a=(1.0, 2.0)),
    "case4.2": dict(chi1=1.0, chi2=16.0, epsilon=1 / 16, eta=1 / 16,
                    phi_minus=1.0, phi_plus=1.0, a=(1.0, 2.0)),
}


def test_catalog_names():
    assert set(presets.names()) == set(EXPECTED_SINGLE) | {"kchannel"}
    assert presets.kind("case3") == "single"
    assert presets.kind("kchannel") == "channel"
    with pytest.raises(ConfigError):
        presets.kind("case9.9")


@pytest.mark.parametrize("name", sorted(EXPECTED_SINGLE))
def test_single_domain_parameters(name):
    want = EXPECTED_SINGLE[name]
    prob = presets.single_domain(name)
    assert prob.chi1 == want["chi1"]
    assert prob.chi2 == want["chi2"]
    assert prob.epsilon == want["epsilon"]
    assert prob.eta == want["eta"]
    assert prob.phi_minus == want["phi_minus"]
    assert prob.phi_plus == want["phi_plus"]
    assert tuple(s.z for s in prob.species) == (-1, 1)
    assert tuple(s.a for s in prob.species) == want["a"]
    # The stored coupling must be the reciprocal-permittivity value for the
    # scaled cases; case3 uses independently fixed physical constants.
    if name != "case3":
        assert math.isclose(prob.chi2, 1.0 / prob.epsilon)
        assert prob.eta == prob.epsilon
    assert 0.0 < prob.omega <= 1.0


def test_single_domain_overrides():
    prob = presets.single_domain("case1.1", omega=0.3, tol=1e-8)
    assert prob.omega == 0.3 and prob.tol == 1e-8
    with pytest.raises(ConfigError):
        presets.single_domain("case1.1", wavelength=3)
    with pytest.raises(ConfigError):
        presets.single_domain("nope")


def test_channel_preset():
    prob = presets.channel("kchannel", h=0.05)
    # 20 bath pieces either side of the 4 channel segments.
    assert len(prob.subdomains) == 44
    assert prob.phi_left == 0.0
    assert prob.phi_right == pytest.approx(-0.1)
    assert prob.c_bath == 0.15
    with pytest.raises(ConfigError):
        presets.channel("kchannel", vapp=3)
    with pytest.raises(ConfigError):
        presets.channel("membrane")
