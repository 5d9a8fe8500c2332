import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy import special

from polscat.bands import BandKind, BandModel, exciton_band
from polscat.errors import ExtractionError
from polscat.oracle import (
    Dispersion,
    FiniteLatticeProblem,
    IntegralResult,
    Method,
    convergence_study,
    finite_lattice_solve,
    i_os_quadrature,
    i_st_polariton_model,
    i_st_polariton_terms,
    i_st_quadrature,
    integrate_panels,
    osc_integral,
    pole_cluster,
    richardson_eta,
    static_integral,
)
from polscat.params import AtomParams, CavityParams, LatticeParams, Occupancy
from polscat.polariton import PolaritonBranch
from polscat.scattering import DefectSpec, exciton_vacancy_amplitude

A = 2000.0
LAT = LatticeParams(a=A)
AT = AtomParams(E_A=2.0, J=-1e-7, J0=-1e-3, J1=-1e-7)
BAND = exciton_band(LAT, AT)


# ----------------------------------------------------------------------
# Quadrature building blocks


def test_integrate_panels_polynomial_exact():
    # GL(24) integrates degree-47 polynomials exactly; check a cubic.
    val, err = integrate_panels(lambda q: q**3 - 2.0 * q + 0j, [0.0, 1.0, 2.0], n=24)
    assert val == pytest.approx(0.0, abs=1e-13)
    assert err < 1e-13
    val, _ = integrate_panels(lambda q: q * q + 0j, [0.0, 3.0], n=24)
    assert val == pytest.approx(9.0, rel=1e-14)


def test_pole_cluster_structure():
    pts = pole_cluster(1.0, 0.01, 0.0, 3.0)
    assert pts[0] == 0.0 and pts[-1] == 3.0
    assert 1.0 in pts
    assert pts == sorted(pts)
    below = [1.0 - p for p in pts if 0.0 < p < 1.0]
    # Geometric grading, factor 3 away from the pole.
    assert below[0] / below[1] == pytest.approx(3.0, rel=1e-12)
    # Pole outside the window: no refinement.
    assert pole_cluster(5.0, 0.01, 0.0, 3.0) == [0.0, 3.0]


def test_static_integral_closed_form():
    # ∫₀^kmax q/(q²−k²−iη) dq = ½[ln(kmax²−k²−iη) − ln(−k²−iη)] per η.
    k, kmax = 0.7, 3.0
    for eta in (1e-2, 1e-4, 1e-6):
        val, est = static_integral(k, kmax, eta)
        exact = 0.5 * (
            cmath.log(kmax * kmax - k * k - 1j * eta) - cmath.log(-k * k - 1j * eta)
        )
        actual = abs(val - exact)
        assert actual < 1e-9
        assert actual <= 10.0 * est + 5e-12  # estimate stays honest


def test_osc_integral_closed_form():
    # ∫₀^∞ q·J₀(qr)/(q²−k²−iη) dq = (iπ/2)·H₀⁽¹⁾(r√(k²+iη)) per η.
    k, r = 0.7, 40.0
    for eta in (1e-2, 1e-4, 1e-6):
        val, est = osc_integral(k, r, eta)
        exact = 0.5j * math.pi * special.hankel1(0, r * cmath.sqrt(k * k + 1j * eta))
        actual = abs(val - exact)
        assert actual < 1e-10
        assert actual <= 10.0 * est + 5e-12


def test_richardson_eta_polynomial():
    # Four points at ratio 4 cancel η, η², η³ exactly.
    def evaluate(eta):
        return 3.5 - 2.0j + 1.25 * eta - 0.5j * eta**2 + 0.125 * eta**3, 1e-15

    value, est, eta_min = richardson_eta(evaluate, k=1.0, eta0=0.8)
    assert value == pytest.approx(3.5 - 2.0j, abs=1e-14)
    assert eta_min == pytest.approx(0.8 / 4**3, rel=1e-15)
    # The estimate keeps the last-column spread, so it bounds the true error.
    assert est >= abs(value - (3.5 - 2.0j))


# ----------------------------------------------------------------------
# Physical integrals


def test_i_os_matches_hankel():
    k = 1e-4
    r = 50.0 / k
    res = i_os_quadrature(k, r, BAND)
    pref = math.pi / (2.0 * BAND.Delta_band)
    exact = -pref * 0.5j * math.pi * special.hankel1(0, k * r)
    assert abs(res.value - exact) / abs(exact) < 1e-6
    assert abs(res.value - exact) <= res.estimated_error
    assert res.method is Method.QUADRATURE
    # Recorded regulator is the smallest evaluated, converted to eV.
    scale = BAND.Delta_band * (A / math.pi) ** 2
    assert res.eta == pytest.approx(1e-2 * k * k / 4**3 * scale, rel=1e-12)


def test_i_os_matches_asymptotic_form():
    k = 1e-4
    r = 50.0 / k
    res = i_os_quadrature(k, r, BAND)
    pref = math.pi / (2.0 * BAND.Delta_band)
    asym = -pref * cmath.sqrt(0.5j * math.pi / (k * r)) * cmath.exp(1j * k * r)
    assert abs(res.value - asym) / abs(asym) < 1e-2


def test_i_os_domain():
    with pytest.raises(ValueError):
        i_os_quadrature(0.0, 1e5, BAND)
    with pytest.raises(ValueError):
        i_os_quadrature(1e-4, -1.0, BAND)


def test_i_st_matches_log_form():
    k = 1e-4
    res = i_st_quadrature(k, BAND)
    pref = math.pi / (2.0 * BAND.Delta_band)
    closed = -pref * complex(math.log(k * A / math.pi), -0.5 * math.pi)
    assert abs(res.value - closed) / abs(closed) < 5e-3
    # The iπ/2 piece comes out essentially exactly; the error is in the log.
    assert res.value.imag == pytest.approx(closed.imag, rel=1e-10)


def test_i_st_domain():
    with pytest.raises(ValueError):
        i_st_quadrature(0.0, BAND)
    with pytest.raises(ValueError):
        i_st_quadrature(math.pi / A, BAND)


def polariton_branch():
    cav = CavityParams.for_cutoff(BAND.E0_band, g=1e-4)
    return PolaritonBranch(exciton=BAND, cavity=cav)


def test_polariton_terms_flat_identity():
    lp = polariton_branch()
    k = 1e-6
    _, flat = i_st_polariton_terms(k, lp)
    lam = lp.flat_gap(k)
    exact = math.pi / (4.0 * lam) * (1.0 - (lp.k0 * A / math.pi) ** 2)
    assert flat.value.real == pytest.approx(exact, rel=1e-12)
    assert flat.value.imag == 0.0


def test_polariton_terms_parabolic_closed_form():
    # Finite-k₀ closed form: (πX²/2Δ_p)·[½ln((k₀²−k²)/k²) + iπ/2].
    lp = polariton_branch()
    k = 1e-6
    parab, _ = i_st_polariton_terms(k, lp)
    model = lp.parabolic_model()
    pref = math.pi * lp.at(k).x2_minus / (2.0 * model.Delta_band)
    k0 = lp.k0
    exact = pref * complex(0.5 * math.log((k0 * k0 - k * k) / (k * k)), 0.5 * math.pi)
    assert abs(parab.value - exact) / abs(exact) < 1e-9
    assert abs(parab.value - exact) <= parab.estimated_error


def test_polariton_terms_domain():
    lp = polariton_branch()
    with pytest.raises(ValueError):
        i_st_polariton_terms(lp.k0, lp)  # crossover excluded
    with pytest.raises(ValueError):
        i_st_polariton_terms(0.0, lp)


def test_polariton_model_is_sum_of_terms():
    lp = polariton_branch()
    parab, flat = i_st_polariton_terms(1e-6, lp)
    total = i_st_polariton_model(1e-6, lp)
    assert total.value == parab.value + flat.value
    assert total.estimated_error == parab.estimated_error + flat.estimated_error


# ----------------------------------------------------------------------
# Finite-lattice reference solver


def test_lattice_problem_validation():
    ok = dict(N_side=64, a=A, J=-1e-7, strength=2.0)
    FiniteLatticeProblem(**ok)
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**{**ok, "N_side": 8})
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**{**ok, "J": 1e-7})
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**{**ok, "strength": -1.0})
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**ok, k_index=(0, 0))
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**ok, refine=0)
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**ok, zetas=(0.5,))
    with pytest.raises(ValueError):
        FiniteLatticeProblem(**ok, zetas=(0.5, 0.3, 0.15))


def test_lattice_k_property():
    p = FiniteLatticeProblem(N_side=64, a=A, J=-1e-7, strength=2.0, k_index=(3, 4))
    assert p.k == pytest.approx(2.0 * math.pi * 5.0 / (64 * A), rel=1e-15)


def test_lattice_free_case():
    # No defect: the exact solution is the plane wave, f must vanish.
    p = FiniteLatticeProblem(N_side=64, a=A, J=-1e-7, strength=0.0)
    sol = finite_lattice_solve(p)
    assert sol.f == 0j
    assert sol.residual == 0.0
    ix = (np.arange(64) - 32)[:, None]
    iy = (np.arange(64) - 32)[None, :]
    expected = np.exp(2j * math.pi * ix / 64) * np.ones_like(iy, dtype=float)
    assert np.array_equal(sol.psi, expected.astype(complex) + 0.0 * iy)


def test_lattice_matches_closed_form():
    p = FiniteLatticeProblem(N_side=64, a=A, J=-1e-7, strength=2.0)
    sol = finite_lattice_solve(p)
    band = BandModel(E0_band=0.0, Delta_band=math.pi**2 * 1e-7, a=A, kind=BandKind.EXCITON)
    f_ref = exciton_vacancy_amplitude(
        p.k, band, DefectSpec(strength=2.0, occupancy=Occupancy.SINGLE)
    ).f
    assert abs(sol.f - f_ref) / abs(f_ref) < 5e-3
    assert sol.residual < 0.05
    # Broadening halves down the schedule and the fits improve monotonically.
    assert sol.etas_ev[0] == pytest.approx(2.0 * sol.etas_ev[1], rel=1e-12)
    errs = [abs(fh - f_ref) for fh in sol.per_eta]
    assert errs[0] > errs[1] > errs[2]
    assert abs(sol.f - f_ref) < errs[-1]


def test_lattice_cosine_dispersion():
    p = FiniteLatticeProblem(
        N_side=64, a=A, J=-1e-7, strength=2.0, dispersion=Dispersion.COSINE
    )
    sol = finite_lattice_solve(p)
    assert sol.residual < 0.05
    band = BandModel(E0_band=0.0, Delta_band=math.pi**2 * 1e-7, a=A, kind=BandKind.EXCITON)
    f_ref = exciton_vacancy_amplitude(
        p.k, band, DefectSpec(strength=2.0, occupancy=Occupancy.SINGLE)
    ).f
    # Tight-binding band vs small-ka reduction: agreement is only rough here
    # (ka ≈ 0.098), but the extraction itself must stay stable.
    assert abs(sol.f - f_ref) / abs(f_ref) < 0.25


def test_lattice_residual_guard():
    p = FiniteLatticeProblem(
        N_side=16, a=A, J=-1e-7, strength=2.0, refine=1, zetas=(8.0, 4.0)
    )
    with pytest.raises(ExtractionError):
        finite_lattice_solve(p)


def test_convergence_study_rows():
    rows = convergence_study([64], a=A, J=-1e-7, strength=2.0)
    assert len(rows) == 4  # three broadenings plus the extrapolated row
    assert [r["eta"] for r in rows[:3]] == sorted(
        (r["eta"] for r in rows[:3]), reverse=True
    )
    assert rows[3]["eta"] == 0.0
    assert rows[3]["abs_err"] < min(r["abs_err"] for r in rows[:3])
    for row in rows:
        assert set(row) == {"N_side", "eta", "f", "abs_err", "wall_ms", "ka", "f_ref"}
        assert row["ka"] == pytest.approx(2.0 * math.pi / 64, rel=1e-12)


# ----------------------------------------------------------------------
# Special-function dependency cross-check


def test_bessel_reference_values():
    # Pin the j0/hankel1 implementations against mpmath on a wide range.
    mpmath.mp.dps = 30
    for x in np.geomspace(1e-3, 1e3, 13):
        ref_j = float(mpmath.besselj(0, mpmath.mpf(x)))
        assert special.j0(x) == pytest.approx(ref_j, rel=1e-10, abs=1e-14)
        ref_h = complex(mpmath.hankel1(0, mpmath.mpf(x)))
        assert special.hankel1(0, x) == pytest.approx(ref_h, rel=1e-10)
