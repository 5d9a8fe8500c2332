"""Unit conventions and validated parameter containers.

Units
-----
All energies are in eV, all lengths in Å, and wave numbers in Å⁻¹.  ħ = 1
throughout, so "energy" and "angular frequency" are used interchangeably
(ħω and ħJ from the underlying Hamiltonians are written as plain E and J).
The single physical constant needed is ħc; the Coulomb factor e²/4πε₀
follows from it via the (dimensionless) fine-structure constant.

Field names mirror the symbols used in the formulas (E_A, J0, J_bar, ...)
rather than PEP8 lowercase, which keeps configuration files and code
aligned with the notation of the model.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

# ħc in eV·Å (CODATA).  Fine-structure constant is dimensionless.
HBARC = 1973.269804
FINE_STRUCTURE = 1.0 / 137.035999084
# e²/4πε₀ = α·ħc, in eV·Å: J_bar for a dipole μ (e·Å) at distance R (Å).
COULOMB_EV_ANG = HBARC * FINE_STRUCTURE

# Magic angle: 1 − 3cos²θ = 0.
MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))


class Occupancy(enum.Enum):
    """Lattice filling: one atom per site, or two (symmetric excitation)."""

    SINGLE = "single"
    DOUBLE = "double"

    @classmethod
    def parse(cls, text: str) -> "Occupancy":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"occupancy must be 'single' or 'double', got {text!r}"
            ) from None


@dataclass(frozen=True)
class LatticeParams:
    """Square optical lattice.

    Parameters
    ----------
    a : float
        Lattice constant in Å.
    N_side : int
        Number of sites per side of the (square) finite lattice.
    occupancy : Occupancy
        Filling per site.
    """

    a: float
    N_side: int = 201
    occupancy: Occupancy = Occupancy.SINGLE

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError(f"lattice constant must be positive, got a={self.a}")
        if self.N_side < 4:
            raise ValueError(f"N_side must be at least 4, got {self.N_side}")
        if not isinstance(self.occupancy, Occupancy):
            raise ValueError("occupancy must be an Occupancy value")

    @property
    def bz_edge(self) -> float:
        """Brillouin-zone edge π/a in Å⁻¹."""
        return math.pi / self.a


@dataclass(frozen=True)
class AtomParams:
    """Atomic excitation energy and hopping amplitudes (all in eV).

    J is the nearest-neighbour exciton hopping for singly occupied sites;
    J0 and J1 are the on-site pair shift and nearest-neighbour hopping of
    the symmetric two-atom excitation.  Negative J (J1) puts the band
    minimum at k = 0.
    """

    E_A: float
    J: float = 0.0
    J0: float = 0.0
    J1: float = 0.0

    def __post_init__(self) -> None:
        if not self.E_A > 0:
            raise ValueError(f"atomic energy must be positive, got E_A={self.E_A}")


@dataclass(frozen=True)
class CavityParams:
    """Planar cavity: mirror spacing L (Å), permittivity and coupling.

    The TM₀ photon dispersion is E(k) = (ħc/√ε)·√(k² + (π/L)²); g is the
    light-matter coupling to the atomic transition, in eV.
    """

    L: float
    g: float
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        if not self.L > 0:
            raise ValueError(f"cavity length must be positive, got L={self.L}")
        if not self.epsilon >= 1:
            raise ValueError(f"permittivity must be >= 1, got {self.epsilon}")
        if self.g < 0:
            raise ValueError(f"coupling must be non-negative, got g={self.g}")

    @property
    def cutoff(self) -> float:
        """Cavity photon energy at k = 0, (ħc/√ε)·(π/L) in eV."""
        return HBARC / math.sqrt(self.epsilon) * math.pi / self.L

    @classmethod
    def for_cutoff(cls, omega0: float, g: float, epsilon: float = 1.0) -> "CavityParams":
        """Build the cavity whose k = 0 photon energy equals ``omega0``."""
        if not omega0 > 0:
            raise ValueError(f"cutoff energy must be positive, got {omega0}")
        L = HBARC * math.pi / (math.sqrt(epsilon) * omega0)
        return cls(L=L, g=g, epsilon=epsilon)


@dataclass(frozen=True)
class AsymmetricSiteParams:
    """One site with a tilted two-atom axis.

    theta is the angle between the pair axis and the lattice normal, in
    radians; J_bar sets the dipole-dipole scale so the on-site shift is
    J0(θ) = J_bar·(1 − 3cos²θ).  Optionally derived from a transition
    dipole mu (e·Å) and pair separation R (Å).
    """

    J_bar: float
    theta: float
    mu: float | None = None
    R: float | None = None

    def __post_init__(self) -> None:
        if not self.J_bar > 0:
            raise ValueError(f"dipole scale must be positive, got J_bar={self.J_bar}")

    @classmethod
    def from_dipole(cls, mu: float, R: float, theta: float) -> "AsymmetricSiteParams":
        return cls(J_bar=jbar_from_dipole(mu, R), theta=theta, mu=mu, R=R)


def jbar_from_dipole(mu: float, R: float) -> float:
    """Dipole-dipole energy scale μ²/(4πε₀R³) in eV.

    Parameters
    ----------
    mu : float
        Transition dipole in e·Å.
    R : float
        Interatomic distance in Å.
    """
    if not R > 0:
        raise ValueError(f"distance must be positive, got R={R}")
    return COULOMB_EV_ANG * mu * mu / R**3


def j0_of_theta(p: AsymmetricSiteParams) -> float:
    """Angle-dependent on-site shift J_bar·(1 − 3cos²θ), in eV.

    Vanishes at the magic angle θ = arccos(1/√3) ≈ 54.736°, negative below
    it and positive above.
    """
    c = math.cos(p.theta)
    return p.J_bar * (1.0 - 3.0 * c * c)
