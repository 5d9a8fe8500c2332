"""Parabolic exciton band models near k = 0.

The tight-binding dispersion on the square lattice, E(k) = E₀' −
2J(cos k_x a + cos k_y a) for nearest-neighbour hopping J < 0, is reduced
to its isotropic small-k expansion E(k) = E0_band + Δ_band·(ka/π)², which
is the only form the analytic scattering theory uses.  Δ_band is the
energy reach of the parabola at the zone edge ka = π: writing the
curvature as ħ²/2m* with m* = −ħ/(2Ja²) gives Δ_band = ħ²π²/(2m*a²) =
π²|J|.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NegativeMassError
from .params import AtomParams, LatticeParams, Occupancy

# Beyond this the parabolic model departs visibly from the cosine band.
PARABOLIC_KA_LIMIT = 0.3


class BandKind(enum.Enum):
    EXCITON = "exciton"
    SYMMETRIC_EXCITON = "symmetric_exciton"
    LOWER_POLARITON_PARABOLIC = "lower_polariton_parabolic"


@dataclass(frozen=True)
class BandModel:
    """Isotropic parabola E(k) = E0_band + Δ_band·(ka/π)².

    E0_band is the band edge at k = 0 (eV); Δ_band > 0 is the zone-edge
    energy reach (eV); a the lattice constant (Å).
    """

    E0_band: float
    Delta_band: float
    a: float
    kind: BandKind

    def __post_init__(self) -> None:
        if not self.Delta_band > 0:
            raise ValueError(
                f"band curvature scale must be positive, got {self.Delta_band}"
            )
        if not self.a > 0:
            raise ValueError(f"lattice constant must be positive, got a={self.a}")


def exciton_band(lat: LatticeParams, at: AtomParams) -> BandModel:
    """Frenkel exciton band of the singly occupied lattice.

    Edge E_A − 2J, reach π²|J|.  The −2J edge follows the one-dimensional
    reduction convention used consistently by the scattering formulas; a
    literal 2D square-lattice count of z = 4 neighbours would shift the
    edge to E_A + 4J without affecting the curvature, and none of the
    scattering observables depend on the absolute edge position.
    """
    if lat.occupancy is not Occupancy.SINGLE:
        raise ValueError("exciton_band requires singly occupied sites")
    if at.J >= 0:
        raise NegativeMassError(
            f"exciton hopping must be negative for a k=0 band minimum, got J={at.J}"
        )
    return BandModel(
        E0_band=at.E_A - 2.0 * at.J,
        Delta_band=math.pi**2 * abs(at.J),
        a=lat.a,
        kind=BandKind.EXCITON,
    )


def symmetric_exciton_band(lat: LatticeParams, at: AtomParams) -> BandModel:
    """Band of the symmetric one-excitation state of doubly occupied sites.

    The pair shift J0 moves the edge rigidly; hopping is 2J1 per
    neighbour, so the edge sits at E_A + J0 + 8J1 and the reach is 2π²|J1|.
    """
    if lat.occupancy is not Occupancy.DOUBLE:
        raise ValueError("symmetric_exciton_band requires doubly occupied sites")
    if at.J1 >= 0:
        raise NegativeMassError(
            f"pair hopping must be negative for a k=0 band minimum, got J1={at.J1}"
        )
    return BandModel(
        E0_band=at.E_A + at.J0 + 8.0 * at.J1,
        Delta_band=2.0 * math.pi**2 * abs(at.J1),
        a=lat.a,
        kind=BandKind.SYMMETRIC_EXCITON,
    )


def eval_band(band: BandModel, k):
    """Evaluate E(k) = E0_band + Δ_band·(ka/π)² for scalar or array k ≥ 0.

    Warns (does not raise) when ka > 0.3, where the parabola is no longer
    a faithful stand-in for the cosine band.
    """
    karr = np.asarray(k, dtype=float)
    if np.any(karr < 0):
        raise ValueError("wave number must be non-negative")
    ka = karr * band.a
    if np.any(ka > PARABOLIC_KA_LIMIT):
        warnings.warn(
            f"ka = {float(np.max(ka)):.3g} exceeds the parabolic range "
            f"(ka > {PARABOLIC_KA_LIMIT}); band energies are extrapolated",
            stacklevel=2,
        )
    out = band.E0_band + band.Delta_band * (ka / math.pi) ** 2
    return float(out) if np.isscalar(k) else out
