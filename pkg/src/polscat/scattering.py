"""Elastic scattering off a single-site defect, and defect-bound poles.

A point defect of strength S (a rank-one perturbation −S·|0⟩⟨0| for a
vacancy of energy cost S, or the on-site shift of one anomalous pair)
scatters a 2D parabolic band exactly; resumming the Born series gives

    f = A / (1 + A·w),   A = πS/(2Δ_band),   w = ln(ka/π) − iπ/2,

for the bare exciton, and for the lower polariton branch

    f = X_k²·(πS/2Δ_p) / (1 − S·I_st),

where I_st is the static self-energy of the flat defect level against the
two-part branch (parabolic up to the crossover k₀, flat gap Λ_k above).
By default the slowly varying logarithm in I_st is dropped,
I_st ≈ π/(4Λ_k); ``exact_denominator=True`` keeps it.

Cross sections are reported as σ = 2π|f|² and potentials are classified
by the saturation ratio S/Δ_band (hard disk) or the sign of f
(repulsive barrier / attractive well).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .bands import BandModel, symmetric_exciton_band
from .errors import SingularDenominatorError
from .params import AsymmetricSiteParams, AtomParams, CavityParams, LatticeParams, Occupancy, j0_of_theta
from .polariton import PolaritonBranch

# Saturation ratio beyond which the defect acts as an impenetrable disk.
HARD_DISK_RATIO = 100.0
# |denominator| below this is reported as a pole rather than an amplitude.
POLE_TOL = 1e-9
# Validity window of the logarithmic amplitude formulas.
KA_ERROR = 0.3
KA_WARN = 0.1


class PotentialClass(enum.Enum):
    HARD_DISK = "hard_disk"
    REPULSIVE_BARRIER = "repulsive_barrier"
    ATTRACTIVE_WELL = "attractive_well"


@dataclass(frozen=True)
class DefectSpec:
    """Single-site defect: strength in eV, lattice filling, optional tilt."""

    strength: float
    occupancy: Occupancy
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.occupancy is Occupancy.SINGLE and not self.strength > 0:
            raise ValueError(
                f"vacancy strength must be positive, got {self.strength}"
            )


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitude f, cross-section σ = 2π|f|², and the effective potential.

    ``pole=True`` marks a resonant denominator (|1 − S·I_st| < 1e-9); f and
    sigma are then NaN and only the classification fields are meaningful.
    """

    f: complex
    sigma: float
    potential_class: PotentialClass
    effective_height: float
    effective_width: float
    pole: bool = False


def _classify(
    strength: float,
    band_reach: float,
    f: complex,
    x2: float | None = None,
    flat_gap: float | None = None,
) -> tuple[PotentialClass, float]:
    """Potential class and model barrier height for one amplitude."""
    if strength / band_reach >= HARD_DISK_RATIO:
        return PotentialClass.HARD_DISK, strength
    ref = f.real
    if ref == 0.0 or math.isnan(ref):
        ref = strength
    cls = PotentialClass.REPULSIVE_BARRIER if ref < 0 else PotentialClass.ATTRACTIVE_WELL
    if x2 is None:
        height = abs(strength)
    elif abs(strength) >= abs(flat_gap):
        # Saturated: the defect detunes the flat level across the whole gap.
        height = 2.0 * x2 * abs(flat_gap)
    else:
        height = 0.5 * math.pi * abs(strength) * x2
    return cls, height


def _check_k(k: float, a: float) -> None:
    if not k > 0:
        raise ValueError(f"wave number must be positive, got k={k}")
    if k * a >= KA_ERROR:
        raise ValueError(
            f"ka = {k * a:.3g} outside the logarithmic regime (need ka < {KA_ERROR})"
        )
    if k * a > KA_WARN:
        warnings.warn(
            f"ka = {k * a:.3g} > {KA_WARN}: amplitude accuracy degrades",
            stacklevel=3,
        )


def exciton_vacancy_amplitude(
    k: float, band: BandModel, defect: DefectSpec
) -> ScatteringResult:
    """Scattering amplitude of a bare exciton off one defect site.

    Valid for ka < 0.3 (raises beyond); warns above ka = 0.1.  Works for
    both fillings: strength is the vacancy energy for single occupancy
    and the signed pair shift J0 for double occupancy.
    """
    _check_k(k, band.a)
    s = defect.strength
    amp = math.pi * s / (2.0 * band.Delta_band)
    w = complex(math.log(k * band.a / math.pi), -0.5 * math.pi)
    f = amp / (1.0 + amp * w)
    cls, height = _classify(s, band.Delta_band, f)
    return ScatteringResult(
        f=f,
        sigma=2.0 * math.pi * abs(f) ** 2,
        potential_class=cls,
        effective_height=height,
        effective_width=band.a,
    )


def _branch_amplitude(
    k: float, lp: PolaritonBranch, strength: float, exact_denominator: bool
) -> tuple[complex, float, float, bool]:
    """Shared polariton amplitude core: (f, X², Λ_k, pole flag)."""
    _check_k(k, lp.exciton.a)
    pt = lp.at(k)
    lam = lp.flat_energy - pt.omega_minus
    if lam == 0.0:
        raise SingularDenominatorError(
            "flat level is degenerate with the branch at this k"
        )
    x2 = pt.x2_minus
    dp = lp.delta_p
    denom: complex = 1.0 - math.pi * strength / (4.0 * lam)
    if exact_denominator:
        if lp.flat_energy <= lp.parabolic_model().E0_band:
            raise ValueError(
                "exact denominator needs a propagating crossover; the flat "
                "level sits at or below the branch bottom"
            )
        ln_term = complex(math.log(k / lp.k0), -0.5 * math.pi)
        denom = denom + strength * (math.pi * x2 / (2.0 * dp)) * ln_term
    if abs(denom) < POLE_TOL:
        return complex(math.nan, math.nan), x2, lam, True
    f = x2 * (math.pi * strength / (2.0 * dp)) / denom
    return complex(f), x2, lam, False


def _branch_result(
    k: float, lp: PolaritonBranch, strength: float, exact_denominator: bool
) -> ScatteringResult:
    f, x2, lam, pole = _branch_amplitude(k, lp, strength, exact_denominator)
    cls, height = _classify(strength, lp.delta_p, f, x2=x2, flat_gap=lam)
    sigma = math.nan if pole else 2.0 * math.pi * abs(f) ** 2
    return ScatteringResult(
        f=f,
        sigma=sigma,
        potential_class=cls,
        effective_height=math.nan if pole else height,
        effective_width=lp.exciton.a,
        pole=pole,
    )


def polariton_vacancy_amplitude(
    k: float, lp: PolaritonBranch, defect: DefectSpec, *, exact_denominator: bool = False
) -> ScatteringResult:
    """Lower-branch polariton scattering off a vacancy of energy ``strength``.

    The vacancy removes one emitter, leaving a flat (dispersionless) level
    at the exciton edge that the branch scatters against through the gap
    Λ_k = e_flat − Ω₋(k).
    """
    if defect.occupancy is not Occupancy.SINGLE:
        raise ValueError("polariton vacancy scattering requires single occupancy")
    return _branch_result(k, lp, defect.strength, exact_denominator)


def twoatom_polariton_amplitude(
    k: float, lp: PolaritonBranch, defect: DefectSpec, *, exact_denominator: bool = False
) -> ScatteringResult:
    """Polariton scattering off one pair site with anomalous shift J0.

    ``lp`` must be built with e_flat = E_A + J0 of the background pair
    lattice; the defect strength is the signed on-site shift.
    """
    if defect.occupancy is not Occupancy.DOUBLE:
        raise ValueError("two-atom defect scattering requires double occupancy")
    return _branch_result(k, lp, defect.strength, exact_denominator)


def asymmetric_amplitude(
    k: float,
    lat: LatticeParams,
    at: AtomParams,
    cav: CavityParams,
    site: AsymmetricSiteParams,
    *,
    exact_denominator: bool = False,
) -> ScatteringResult:
    """Polariton scattering off a pair site tilted by θ from the normal.

    The tilt sets the on-site shift J0(θ) = J_bar(1 − 3cos²θ), which is
    simultaneously the defect strength and a rigid shift of the exciton
    energy, so the branch (and X_k, Λ_k with it) is rebuilt per angle at
    fixed cavity.  At the magic angle the amplitude vanishes identically.
    """
    j0 = j0_of_theta(site)
    at_theta = replace(at, J0=j0)
    band = symmetric_exciton_band(lat, at_theta)
    lp = PolaritonBranch(exciton=band, cavity=cav, e_flat=at.E_A + j0)
    defect = DefectSpec(strength=j0, occupancy=Occupancy.DOUBLE, theta=site.theta)
    return twoatom_polariton_amplitude(
        k, lp, defect, exact_denominator=exact_denominator
    )


def real_denominator(k: float, lp: PolaritonBranch, strength: float) -> float:
    """1 − πS/(4Λ_k), the default (logarithm-free) barrier denominator.

    Real by construction; its zeros are the scattering resonances that
    sweeps report as pole-flagged rows.
    """
    _check_k(k, lp.exciton.a)
    lam = lp.flat_energy - lp.at(k).omega_minus
    if lam == 0.0:
        raise SingularDenominatorError(
            "flat level is degenerate with the branch at this k"
        )
    return 1.0 - math.pi * strength / (4.0 * lam)


def asymmetric_real_denominator(
    k: float,
    lat: LatticeParams,
    at: AtomParams,
    cav: CavityParams,
    site: AsymmetricSiteParams,
) -> float:
    """Default denominator of the tilted-site amplitude, branch rebuilt at θ."""
    j0 = j0_of_theta(site)
    at_theta = replace(at, J0=j0)
    band = symmetric_exciton_band(lat, at_theta)
    lp = PolaritonBranch(exciton=band, cavity=cav, e_flat=at.E_A + j0)
    return real_denominator(k, lp, j0)


def pole_denominator(lp: PolaritonBranch, strength: float, kappa: float) -> float:
    """1 − S·I_st continued below the branch bottom, at decay constant κ.

    The bound state at E = Ω₋(0) − Δ_p(κa/π)² replaces the propagating
    logarithm by ln(κ/k₀) and evaluates the flat gap at E; a root in κ is
    a true pole of the scattering amplitude.
    """
    if not kappa > 0:
        raise ValueError(f"decay constant must be positive, got {kappa}")
    model = lp.parabolic_model()
    a = lp.exciton.a
    energy = model.E0_band - model.Delta_band * (kappa * a / math.pi) ** 2
    lam = lp.flat_energy - energy
    x2 = lp.at(0.0).x2_minus
    i_st = -(math.pi * x2 / (2.0 * lp.delta_p)) * math.log(kappa / lp.k0) + math.pi / (
        4.0 * lam
    )
    return 1.0 - strength * i_st


def locate_pole(
    lp: PolaritonBranch,
    defect: DefectSpec,
    kappa_range: tuple[float, float | None] = (1e-12, None),
    scan_points: int = 400,
) -> float | None:
    """Bound-state energy below the branch bottom, or None.

    Scans the pole denominator over a geometric κ grid, brackets the first
    sign change and polishes it with Brent's method.  Attractive defects
    whose root falls below the κ floor (binding energy under double
    precision) report None, as do repulsive defects, which have no pole.
    """
    strength = defect.strength
    if strength <= 0:
        return None
    lo, hi = kappa_range
    if hi is None:
        hi = math.pi / lp.exciton.a
    if not 0 < lo < hi:
        raise ValueError(f"bad scan range ({lo}, {hi})")
    grid = np.geomspace(lo, hi, scan_points)
    vals = np.array([pole_denominator(lp, strength, kap) for kap in grid])
    sign_change = np.nonzero(np.diff(np.signbit(vals)))[0]
    if sign_change.size == 0:
        return None
    i = int(sign_change[0])
    kappa = brentq(
        lambda kap: pole_denominator(lp, strength, kap),
        grid[i],
        grid[i + 1],
        xtol=1e-300,
        rtol=8.9e-16,
    )
    model = lp.parabolic_model()
    return model.E0_band - model.Delta_band * (kappa * lp.exciton.a / math.pi) ** 2
