import math

import pytest
from hypothesis import given, strategies as st

from polscat.params import (
    COULOMB_EV_ANG,
    HBARC,
    MAGIC_ANGLE,
    AsymmetricSiteParams,
    AtomParams,
    CavityParams,
    LatticeParams,
    Occupancy,
    j0_of_theta,
    jbar_from_dipole,
)


def test_hbarc_value():
    assert HBARC == pytest.approx(1973.269804, abs=1e-6)


def test_coulomb_constant_matches_literature():
    # e²/4πε₀ = 14.399645 eV·Å (independent of the α·ħc route used here).
    assert COULOMB_EV_ANG == pytest.approx(14.399645, abs=1e-5)


def test_jbar_from_dipole_scale():
    # mu chosen so mu²·14.399645/R³ = 1e-4 eV at R = 100 Å.
    mu = math.sqrt(1e-4 * 100.0**3 / 14.399645)
    assert jbar_from_dipole(mu, 100.0) == pytest.approx(1e-4, rel=1e-6)


def test_jbar_from_dipole_rejects_bad_distance():
    with pytest.raises(ValueError):
        jbar_from_dipole(1.0, 0.0)
    with pytest.raises(ValueError):
        jbar_from_dipole(1.0, -5.0)


def test_lattice_validation():
    with pytest.raises(ValueError):
        LatticeParams(a=0.0)
    with pytest.raises(ValueError):
        LatticeParams(a=-1.0)
    with pytest.raises(ValueError):
        LatticeParams(a=2000.0, N_side=3)
    lat = LatticeParams(a=2000.0)
    assert lat.bz_edge == pytest.approx(math.pi / 2000.0)
    assert lat.occupancy is Occupancy.SINGLE


def test_atom_validation():
    with pytest.raises(ValueError):
        AtomParams(E_A=0.0)
    with pytest.raises(ValueError):
        AtomParams(E_A=-2.0)


def test_cavity_validation_and_cutoff():
    with pytest.raises(ValueError):
        CavityParams(L=0.0, g=1e-4)
    with pytest.raises(ValueError):
        CavityParams(L=3000.0, g=-1e-4)
    with pytest.raises(ValueError):
        CavityParams(L=3000.0, g=1e-4, epsilon=0.5)
    cav = CavityParams.for_cutoff(2.0, g=1e-4)
    assert cav.cutoff == pytest.approx(2.0, rel=1e-14)
    assert cav.L == pytest.approx(HBARC * math.pi / 2.0, rel=1e-14)


def test_cavity_for_cutoff_with_permittivity():
    cav = CavityParams.for_cutoff(2.0, g=1e-4, epsilon=4.0)
    assert cav.cutoff == pytest.approx(2.0, rel=1e-14)


def test_occupancy_parse():
    assert Occupancy.parse(" Single ") is Occupancy.SINGLE
    assert Occupancy.parse("DOUBLE") is Occupancy.DOUBLE
    with pytest.raises(ValueError):
        Occupancy.parse("triple")


def test_j0_angle_dependence():
    jbar = 1e-3
    assert j0_of_theta(AsymmetricSiteParams(jbar, 0.0)) == pytest.approx(-2.0 * jbar)
    assert j0_of_theta(AsymmetricSiteParams(jbar, math.pi / 2)) == pytest.approx(jbar)
    assert abs(j0_of_theta(AsymmetricSiteParams(jbar, MAGIC_ANGLE))) < 1e-18


def test_magic_angle_value():
    assert math.degrees(MAGIC_ANGLE) == pytest.approx(54.7356103, abs=1e-6)


def test_site_from_dipole():
    site = AsymmetricSiteParams.from_dipole(mu=2.0, R=50.0, theta=0.3)
    assert site.J_bar == pytest.approx(jbar_from_dipole(2.0, 50.0))
    assert site.mu == 2.0 and site.R == 50.0
    with pytest.raises(ValueError):
        AsymmetricSiteParams(J_bar=0.0, theta=0.0)


@given(st.floats(0.0, math.pi), st.floats(1e-6, 1e-2))
def test_j0_bounded(theta, jbar):
    j0 = j0_of_theta(AsymmetricSiteParams(jbar, theta))
    assert -2.0 * jbar - 1e-15 <= j0 <= jbar + 1e-15
