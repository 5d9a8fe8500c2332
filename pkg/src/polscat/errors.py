"""Exception hierarchy shared across the package.

Configuration problems (bad keys, inconsistent parameter combinations,
malformed sweeps) raise :class:`ConfigError`; numerical failures that a
retry with different resolution settings might cure raise subclasses of
:class:`ConvergenceError`.  The CLI maps these onto process exit codes.
"""

from __future__ import annotations


class PolscatError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PolscatError):
    """Invalid configuration file, sweep definition, or flag combination."""


class ConvergenceError(PolscatError):
    """A numerical procedure failed to reach its accuracy target."""


class ExtractionError(ConvergenceError):
    """Far-field amplitude fit residual exceeded the acceptance threshold."""


class ResolutionError(ConvergenceError):
    """Grid too coarse to resolve the requested feature (e.g. ring radius)."""


class NegativeMassError(ValueError, PolscatError):
    """Hopping sign implies a negative effective mass at the band bottom."""


class DegenerateCouplingError(ValueError, PolscatError):
    """Vanishing light-matter coupling: polariton branches are degenerate."""


class SingularDenominatorError(ZeroDivisionError, PolscatError):
    """Flat-band gap closed; the barrier denominator is singular."""
