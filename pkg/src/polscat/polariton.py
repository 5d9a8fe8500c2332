"""Cavity-polariton branches and the parabolic lower-branch reduction.

The 2×2 exciton-photon Hamiltonian at in-plane wave number k has
eigenvalues

    Ω±(k) = (ω_cav + ω_ex)/2 ± Δ_k,   Δ_k = √(δ_k² + g²),

with half-detuning δ_k = (ω_cav(k) − ω_ex(k))/2.  Hopfield coefficients
follow the sign convention X₋ > 0, Y₋ > 0 at resonance:

    |X₋|² = (Δ_k + δ_k)/(2Δ_k),   |Y₋|² = 1 − |X₋|²,

so the lower branch is exciton-like (|X₋|² > 1/2) for δ_k > 0 and
photon-like for δ_k < 0.  The upper-branch row is the orthogonal unit
vector.  Unitarity |X|² + |Y|² = 1 is enforced exactly by construction.

Near k = 0 the lower branch is itself parabolic; its zone-edge reach is
Δ_p = πħcL/(2√ε a²), the photon mass scale m_p = ħπ√ε/(cL) expressed in
band-model form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bands import BandKind, BandModel, eval_band
from .errors import DegenerateCouplingError
from .params import HBARC, CavityParams


class Branches(NamedTuple):
    omega_plus: float
    omega_minus: float
    x_plus: float
    x_minus: float
    y_plus: float
    y_minus: float


@dataclass(frozen=True)
class PolaritonPoint:
    """Both branches, detuning and Hopfield weights at one wave number."""

    k: float
    omega_cav: float
    omega_ex: float
    delta_k: float
    Delta_k: float
    omega_plus: float
    omega_minus: float
    x_minus: float
    y_minus: float
    x_plus: float
    y_plus: float

    @property
    def x2_minus(self) -> float:
        return self.x_minus * self.x_minus

    @property
    def y2_minus(self) -> float:
        return self.y_minus * self.y_minus


def cavity_dispersion(c: CavityParams, k):
    """Cavity photon energy (ħc/√ε)·√(k² + (π/L)²) for k ≥ 0 (eV)."""
    karr = np.asarray(k, dtype=float)
    if np.any(karr < 0):
        raise ValueError("wave number must be non-negative")
    out = HBARC / math.sqrt(c.epsilon) * np.sqrt(karr**2 + (math.pi / c.L) ** 2)
    return float(out) if np.isscalar(k) else out


def detuning(c: CavityParams, band: BandModel, k) -> float:
    """Half-detuning δ_k = (ω_cav(k) − ω_ex(k))/2 in eV."""
    return 0.5 * (cavity_dispersion(c, k) - eval_band(band, k))


def branches(c: CavityParams, band: BandModel, k: float) -> Branches:
    """Diagonalize the coupled exciton-photon pair at one k.

    Returns (Ω₊, Ω₋, X₊, X₋, Y₊, Y₋) with real Hopfield amplitudes; the
    two rows are orthonormal, with X₋, Y₋ ≥ 0 and Y₊ = −X₋ ≤ 0.
    """
    if c.g == 0:
        raise DegenerateCouplingError(
            "g = 0: branches cross and Hopfield weights are ill-defined"
        )
    om_c = cavity_dispersion(c, k)
    om_x = eval_band(band, k)
    delta = 0.5 * (om_c - om_x)
    big = math.hypot(delta, c.g)
    mean = 0.5 * (om_c + om_x)
    x_minus = math.sqrt((big + delta) / (2.0 * big))
    y_minus = math.sqrt((big - delta) / (2.0 * big))
    # Upper branch: orthogonal unit vector.
    return Branches(
        omega_plus=mean + big,
        omega_minus=mean - big,
        x_plus=y_minus,
        x_minus=x_minus,
        y_plus=-x_minus,
        y_minus=y_minus,
    )


def delta_p(c: CavityParams, a: float) -> float:
    """Zone-edge reach of the parabolic lower branch, πħcL/(2√ε a²) (eV)."""
    if not a > 0:
        raise ValueError(f"lattice constant must be positive, got a={a}")
    return math.pi * HBARC * c.L / (2.0 * math.sqrt(c.epsilon) * a * a)


def crossover_k0(c: CavityParams, band: BandModel, e_flat: float) -> float:
    """Wave number where the lower branch reaches the flat defect level.

    Solves Ω₋(0) + Δ_p·(k₀a/π)² = e_flat for k₀.  Raises ``ValueError``
    when e_flat does not sit above the branch bottom, and warns when k₀
    is not small compared to the zone edge (the parabolic picture then
    no longer applies).
    """
    bottom = branches(c, band, 0.0).omega_minus
    if not e_flat > bottom:
        raise ValueError(
            f"flat level {e_flat} must lie above the lower-branch bottom {bottom}"
        )
    dp = delta_p(c, band.a)
    k0 = (math.pi / band.a) * math.sqrt((e_flat - bottom) / dp)
    if k0 * band.a / math.pi > 0.3:
        warnings.warn(
            f"k0·a/π = {k0 * band.a / math.pi:.3g} is not small; the parabolic "
            "lower-branch model is unreliable at the crossover",
            stacklevel=2,
        )
    return k0


@dataclass(frozen=True)
class PolaritonBranch:
    """Lower polariton branch bound to one exciton band and cavity.

    ``e_flat`` is the energy of the dispersionless (flat) state that the
    defect couples the branch to; it defaults to the exciton band edge.
    """

    exciton: BandModel
    cavity: CavityParams
    e_flat: float | None = None

    def __post_init__(self) -> None:
        if self.cavity.g == 0:
            raise DegenerateCouplingError(
                "g = 0: polariton branch degenerates into bare modes"
            )

    @property
    def flat_energy(self) -> float:
        return self.exciton.E0_band if self.e_flat is None else self.e_flat

    @property
    def delta_p(self) -> float:
        return delta_p(self.cavity, self.exciton.a)

    @property
    def k0(self) -> float:
        return crossover_k0(self.cavity, self.exciton, self.flat_energy)

    def parabolic_model(self) -> BandModel:
        """Lower branch as a BandModel: edge Ω₋(0), reach Δ_p."""
        bottom = branches(self.cavity, self.exciton, 0.0).omega_minus
        return BandModel(
            E0_band=bottom,
            Delta_band=self.delta_p,
            a=self.exciton.a,
            kind=BandKind.LOWER_POLARITON_PARABOLIC,
        )

    def at(self, k: float) -> PolaritonPoint:
        om_c = cavity_dispersion(self.cavity, k)
        om_x = eval_band(self.exciton, k)
        br = branches(self.cavity, self.exciton, k)
        delta = 0.5 * (om_c - om_x)
        return PolaritonPoint(
            k=float(k),
            omega_cav=om_c,
            omega_ex=om_x,
            delta_k=delta,
            Delta_k=math.hypot(delta, self.cavity.g),
            omega_plus=br.omega_plus,
            omega_minus=br.omega_minus,
            x_minus=br.x_minus,
            y_minus=br.y_minus,
            x_plus=br.x_plus,
            y_plus=br.y_plus,
        )

    def flat_gap(self, k: float) -> float:
        """Λ_k = e_flat − Ω₋(k), the gap to the flat level (eV)."""
        return self.flat_energy - self.at(k).omega_minus
