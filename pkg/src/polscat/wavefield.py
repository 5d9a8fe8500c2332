"""Real-space scattered field on the lattice and its k-space ring.

The total field for incident wave k_in and far-field amplitude f is

    ψ(r) = N^{-1/2} · X · [ e^{i k_in·r} + f·√(iπ/2kρ)·e^{ikρ} ],

with ρ = |r|, N = N_side² and X an optional Hopfield weight for the
observable (excitonic) component.  The outgoing envelope diverges at the
defect site; the origin and its four nearest neighbours are therefore
flagged and carry the incident wave only.

``ring_profile`` Fourier-transforms the scattered part and bins |Ψ(k')|²
radially: elastic scattering concentrates the power on the circle
|k'| = |k_in|, one resolution bin wide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResolutionError
from .params import LatticeParams


@dataclass(frozen=True)
class WaveField:
    """Total field on the N×N site grid (row index = x, column = y)."""

    psi: np.ndarray
    flagged: np.ndarray
    k_in: tuple[float, float]
    f: complex
    a: float
    N_side: int
    hopfield_x: float

    @property
    def origin(self) -> tuple[int, int]:
        c = self.N_side // 2
        return (c, c)


@dataclass(frozen=True)
class RingProfile:
    """Radially binned k-space power of one field component."""

    k: np.ndarray
    intensity: np.ndarray
    k_peak: float
    bin_width: float


def _incident(field_shape_n: int, a: float, k_in: tuple[float, float]) -> np.ndarray:
    n = field_shape_n
    ix = (np.arange(n) - n // 2)[:, None]
    iy = (np.arange(n) - n // 2)[None, :]
    return np.exp(1j * a * (k_in[0] * ix + k_in[1] * iy))


def evaluate_field(
    k_in: tuple[float, float],
    f: complex,
    lat: LatticeParams,
    hopfield_x: float = 1.0,
) -> WaveField:
    """Superpose plane wave and outgoing circular wave on the site grid."""
    kmag = math.hypot(k_in[0], k_in[1])
    if kmag <= 0:
        raise ValueError("incident wave number must be non-zero")
    if not (math.isfinite(f.real) and math.isfinite(f.imag)):
        raise ValueError(f"amplitude must be finite, got f={f}")
    if not 0 < hopfield_x <= 1:
        raise ValueError(f"Hopfield weight must be in (0, 1], got {hopfield_x}")
    n = lat.N_side
    a = lat.a
    ix = (np.arange(n) - n // 2)[:, None]
    iy = (np.arange(n) - n // 2)[None, :]
    rho = np.hypot(ix, iy) * a

    psi_inc = _incident(n, a, k_in)
    flagged = (np.abs(ix) + np.abs(iy)) <= 1

    with np.errstate(divide="ignore", invalid="ignore"):
        envelope = np.sqrt(1j * math.pi / (2.0 * kmag * rho))
        scattered = f * envelope * np.exp(1j * kmag * rho)
    scattered[flagged] = 0.0

    norm = 1.0 / n
    psi = hopfield_x * norm * (psi_inc + scattered)
    return WaveField(
        psi=psi,
        flagged=flagged,
        k_in=(float(k_in[0]), float(k_in[1])),
        f=complex(f),
        a=a,
        N_side=n,
        hopfield_x=float(hopfield_x),
    )


def ring_profile(field: WaveField, part: str = "scattered") -> RingProfile:
    """Radial k-space power of the scattered (or total) field.

    Bin width is the grid resolution Δk = 2π/(N_side·a); raises
    ResolutionError when |k_in| < 4Δk, i.e. when the elastic circle
    cannot be told apart from the origin peak.
    """
    if part not in ("scattered", "total"):
        raise ValueError(f"part must be 'scattered' or 'total', got {part!r}")
    n = field.N_side
    a = field.a
    dk = 2.0 * math.pi / (n * a)
    kmag = math.hypot(*field.k_in)
    if dk > kmag / 4.0:
        raise ResolutionError(
            f"grid resolution dk = {dk:.3g} too coarse for |k_in| = {kmag:.3g}; "
            "need |k_in| >= 4·dk"
        )
    if part == "scattered":
        component = field.psi - field.hopfield_x / n * _incident(n, a, field.k_in)
    else:
        component = field.psi
    power = np.abs(np.fft.fft2(component)) ** 2
    kk = 2.0 * math.pi * np.fft.fftfreq(n, d=a)
    kr = np.hypot(kk[:, None], kk[None, :])
    idx = np.floor(kr / dk).astype(int)
    nbins = int(idx.max()) + 1
    intensity = np.bincount(idx.ravel(), weights=power.ravel(), minlength=nbins)
    centers = (np.arange(nbins) + 0.5) * dk
    peak = centers[int(np.argmax(intensity))]
    return RingProfile(k=centers, intensity=intensity, k_peak=float(peak), bin_width=dk)
