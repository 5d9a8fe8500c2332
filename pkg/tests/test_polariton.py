import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polscat.bands import BandKind, exciton_band
from polscat.errors import DegenerateCouplingError
from polscat.params import HBARC, AtomParams, CavityParams, LatticeParams
from polscat.polariton import (
    PolaritonBranch,
    branches,
    cavity_dispersion,
    crossover_k0,
    delta_p,
    detuning,
)

LAT = LatticeParams(a=2000.0)
AT = AtomParams(E_A=2.0, J=-1e-7)
BAND = exciton_band(LAT, AT)
CAV = CavityParams.for_cutoff(BAND.E0_band, g=1e-4)  # zero detuning at k = 0


def test_cavity_dispersion_cutoff():
    assert cavity_dispersion(CAV, 0.0) == pytest.approx(BAND.E0_band, rel=1e-14)
    with pytest.raises(ValueError):
        cavity_dispersion(CAV, -1e-6)


def test_cavity_dispersion_grows_quadratically():
    k = 1e-6
    om = cavity_dispersion(CAV, k)
    expected = CAV.cutoff + HBARC * CAV.L / (2.0 * math.pi) * k * k
    assert om == pytest.approx(expected, rel=1e-10)


def test_detuning_zero_at_resonance():
    assert detuning(CAV, BAND, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_branch_splitting_at_resonance():
    br = branches(CAV, BAND, 0.0)
    assert br.omega_plus - br.omega_minus == pytest.approx(2.0 * CAV.g, rel=1e-12)
    assert br.x_minus == pytest.approx(math.sqrt(0.5), rel=1e-12)
    assert br.y_minus == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_degenerate_coupling_raises():
    cav0 = CavityParams(L=CAV.L, g=0.0)
    with pytest.raises(DegenerateCouplingError):
        branches(cav0, BAND, 0.0)
    with pytest.raises(DegenerateCouplingError):
        PolaritonBranch(exciton=BAND, cavity=cav0)


def test_branch_character_follows_detuning():
    lp = PolaritonBranch(exciton=BAND, cavity=CAV)
    # Photon grows faster than the heavy exciton band: δ_k > 0 for k > 0
    # and the lower branch turns exciton-like.
    pt = lp.at(2e-6)
    assert pt.delta_k > 0
    assert pt.x2_minus > 0.5
    red = CavityParams.for_cutoff(BAND.E0_band - 4.0 * CAV.g, g=CAV.g)
    pt_red = PolaritonBranch(exciton=BAND, cavity=red).at(0.0)
    assert pt_red.delta_k < 0
    assert pt_red.y2_minus > 0.5


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-50.0, 50.0),
    st.floats(1e-6, 1e-2),
)
def test_branches_solve_the_two_level_problem(delta_over_g, g):
    """(X₋, Y₋) must be the lower eigenvector of the coupled pair.

    The X₋, Y₋ > 0 convention fixes the photon phase so the off-diagonal
    coupling is −g; the spectrum and weights are gauge independent.
    """
    om_ex = 2.0
    om_cav = om_ex + 2.0 * delta_over_g * g
    ham = np.array([[om_ex, -g], [-g, om_cav]])
    # Build a band whose k=0 edge equals om_ex and force the cavity to
    # om_cav through its length, then diagonalize at k = 0.
    lat = LatticeParams(a=2000.0)
    band = exciton_band(lat, AtomParams(E_A=om_ex - 2e-7, J=-1e-7))
    cav = CavityParams.for_cutoff(om_cav, g=g)
    br = branches(cav, band, 0.0)
    vec_minus = np.array([br.x_minus, br.y_minus])
    vec_plus = np.array([br.x_plus, br.y_plus])
    assert np.allclose(ham @ vec_minus, br.omega_minus * vec_minus, atol=1e-12)
    assert np.allclose(ham @ vec_plus, br.omega_plus * vec_plus, atol=1e-12)
    # Unitarity and orthogonality are exact by construction.
    assert br.x_minus**2 + br.y_minus**2 == pytest.approx(1.0, abs=1e-15)
    assert br.x_plus**2 + br.y_plus**2 == pytest.approx(1.0, abs=1e-15)
    assert abs(np.dot(vec_minus, vec_plus)) < 1e-15
    assert br.x_minus > 0 and br.y_minus > 0


def test_delta_p_frozen_value():
    # πħcL/(2√ε a²) at L = ħcπ/2 Å (cutoff 2 eV), a = 2000 Å.
    assert delta_p(CAV, 2000.0) == pytest.approx(2.401887486668074, rel=1e-12)


def test_delta_p_epsilon_scaling():
    cav4 = CavityParams(L=CAV.L, g=1e-4, epsilon=4.0)
    assert delta_p(cav4, 2000.0) == pytest.approx(delta_p(CAV, 2000.0) / 2.0, rel=1e-12)


def test_crossover_k0_frozen_value():
    lp = PolaritonBranch(exciton=BAND, cavity=CAV)
    assert lp.k0 == pytest.approx(1.0135461942131293e-05, rel=1e-10)
    assert lp.k0 * LAT.a / math.pi < 0.01  # deep inside the zone


def test_crossover_k0_domain_and_warning():
    with pytest.raises(ValueError):
        crossover_k0(CAV, BAND, BAND.E0_band - 1.0)
    bottom = branches(CAV, BAND, 0.0).omega_minus
    with pytest.warns(UserWarning, match="parabolic"):
        k0 = crossover_k0(CAV, BAND, bottom + delta_p(CAV, BAND.a))
    assert k0 == pytest.approx(math.pi / BAND.a, rel=1e-12)


def test_parabolic_model():
    lp = PolaritonBranch(exciton=BAND, cavity=CAV)
    model = lp.parabolic_model()
    assert model.kind is BandKind.LOWER_POLARITON_PARABOLIC
    assert model.Delta_band == pytest.approx(lp.delta_p, rel=1e-14)
    assert model.E0_band == pytest.approx(lp.at(0.0).omega_minus, rel=1e-14)


def test_flat_gap_identity_at_k0():
    # For the vacancy (flat level at the exciton edge) Λ₀ = Δ₀ − δ₀ exactly.
    for det in (-2e-4, 0.0, 3e-4):
        cav = CavityParams.for_cutoff(BAND.E0_band + 2.0 * det, g=1e-4)
        lp = PolaritonBranch(exciton=BAND, cavity=cav)
        pt = lp.at(0.0)
        assert lp.flat_gap(0.0) == pytest.approx(pt.Delta_k - pt.delta_k, rel=1e-12)


def test_flat_energy_default_and_override():
    lp = PolaritonBranch(exciton=BAND, cavity=CAV)
    assert lp.flat_energy == BAND.E0_band
    lp2 = PolaritonBranch(exciton=BAND, cavity=CAV, e_flat=2.5)
    assert lp2.flat_energy == 2.5
