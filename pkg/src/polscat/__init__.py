"""Exciton and cavity-polariton dispersion in 2D optical lattices, and
elastic scattering off single-site defects.

The public surface re-exported here covers parameter containers, band
reductions, polariton branches, closed-form scattering amplitudes, the
numerical oracles that validate them, and real-space field synthesis.
"""

__version__ = "0.1.0"

from .bands import BandKind, BandModel, eval_band, exciton_band, symmetric_exciton_band
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateCouplingError,
    ExtractionError,
    NegativeMassError,
    PolscatError,
    ResolutionError,
    SingularDenominatorError,
)
from .oracle import (
    Dispersion,
    FiniteLatticeProblem,
    IntegralResult,
    LatticeSolution,
    Method,
    convergence_study,
    finite_lattice_solve,
    i_os_quadrature,
    i_st_polariton_model,
    i_st_polariton_terms,
    i_st_quadrature,
)
from .params import (
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
from .polariton import (
    Branches,
    PolaritonBranch,
    PolaritonPoint,
    branches,
    cavity_dispersion,
    crossover_k0,
    delta_p,
    detuning,
)
from .scattering import (
    DefectSpec,
    PotentialClass,
    ScatteringResult,
    asymmetric_amplitude,
    exciton_vacancy_amplitude,
    locate_pole,
    polariton_vacancy_amplitude,
    twoatom_polariton_amplitude,
)
from .wavefield import RingProfile, WaveField, evaluate_field, ring_profile

__all__ = [
    "__version__",
    "HBARC",
    "MAGIC_ANGLE",
    "AsymmetricSiteParams",
    "AtomParams",
    "BandKind",
    "BandModel",
    "Branches",
    "CavityParams",
    "ConfigError",
    "ConvergenceError",
    "DefectSpec",
    "DegenerateCouplingError",
    "Dispersion",
    "ExtractionError",
    "FiniteLatticeProblem",
    "IntegralResult",
    "LatticeParams",
    "LatticeSolution",
    "Method",
    "NegativeMassError",
    "Occupancy",
    "PolaritonBranch",
    "PolaritonPoint",
    "PolscatError",
    "PotentialClass",
    "ResolutionError",
    "RingProfile",
    "ScatteringResult",
    "SingularDenominatorError",
    "WaveField",
    "asymmetric_amplitude",
    "branches",
    "cavity_dispersion",
    "convergence_study",
    "crossover_k0",
    "delta_p",
    "detuning",
    "eval_band",
    "evaluate_field",
    "exciton_band",
    "exciton_vacancy_amplitude",
    "finite_lattice_solve",
    "i_os_quadrature",
    "i_st_polariton_model",
    "i_st_polariton_terms",
    "i_st_quadrature",
    "j0_of_theta",
    "jbar_from_dipole",
    "locate_pole",
    "polariton_vacancy_amplitude",
    "ring_profile",
    "symmetric_exciton_band",
    "twoatom_polariton_amplitude",
]
