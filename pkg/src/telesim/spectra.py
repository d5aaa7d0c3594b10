"""Frequency grids and spectral amplitudes for the photon-pair source.

Frequencies are absolute optical frequencies in Hz.  Spectral amplitudes are
discretized on quadrature grids and kept unit-normalized so that downstream
overlap integrals can reuse the same weights without renormalizing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constants import FWHM_TO_SIGMA, SPEED_OF_LIGHT
from .errors import DomainError

NORM_TOL = 1e-9


class TruncationWarning(UserWarning):
    """A spectrum extends past the grid it was sampled on."""


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Quadrature grid over optical frequency.

    points : strictly increasing, positive frequencies in Hz
    weights : positive quadrature weights in Hz (spacing, for uniform grids)
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if pts.ndim != 1 or wts.shape != pts.shape:
            raise DomainError("grid points and weights must be 1-d arrays of equal length")
        if pts.size < 2:
            raise DomainError("grid needs at least two points")
        if not np.all(np.diff(pts) > 0):
            raise DomainError("grid points must be strictly increasing")
        if pts[0] <= 0:
            raise DomainError("grid frequencies must be positive")
        if not np.all(wts > 0):
            raise DomainError("grid weights must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @property
    def n_points(self) -> int:
        return self.points.size

    @property
    def center(self) -> float:
        return 0.5 * (self.points[0] + self.points[-1])

    @property
    def span(self) -> float:
        return self.points[-1] - self.points[0]

    def same_as(self, other: "FrequencyGrid") -> bool:
        return self.points.shape == other.points.shape and np.array_equal(
            self.points, other.points
        )


def make_uniform_grid(center_hz: float, span_hz: float, n_points: int) -> FrequencyGrid:
    """Uniform grid of n_points covering center +- span/2, weights equal to the spacing."""
    if span_hz <= 0:
        raise DomainError("grid span must be positive")
    if n_points < 2:
        raise DomainError("grid needs at least two points")
    if center_hz - span_hz / 2 <= 0:
        raise DomainError("grid would extend to non-positive frequencies")
    pts = np.linspace(center_hz - span_hz / 2, center_hz + span_hz / 2, n_points)
    spacing = pts[1] - pts[0]
    return FrequencyGrid(pts, np.full(n_points, spacing))


@dataclass(frozen=True)
class GaussianComponent:
    """One Gaussian line of a mixture: weight, center (Hz), standard deviation (Hz)."""

    weight: float
    center_hz: float
    sigma_hz: float

    def __post_init__(self):
        if self.weight <= 0:
            raise DomainError("component weight must be positive")
        if self.center_hz <= 0 or self.sigma_hz <= 0:
            raise DomainError("component center and sigma must be positive")

    @classmethod
    def from_nm(cls, weight: float, center_nm: float, fwhm_nm: float) -> "GaussianComponent":
        """Build from wavelength-domain numbers: center c/lambda, sigma from the FWHM."""
        if center_nm <= 0 or fwhm_nm <= 0:
            raise DomainError("center_nm and fwhm_nm must be positive")
        lam = center_nm * 1e-9
        center_hz = SPEED_OF_LIGHT / lam
        fwhm_hz = SPEED_OF_LIGHT * (fwhm_nm * 1e-9) / lam**2
        return cls(weight, center_hz, fwhm_hz * FWHM_TO_SIGMA)


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Normalized Gaussian mixture describing a marginal photon spectrum."""

    components: tuple[GaussianComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise DomainError("mixture needs at least one component")
        total = sum(c.weight for c in comps)
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError("mixture weights must sum to 1")
        object.__setattr__(self, "components", comps)

    def density(self, f: np.ndarray) -> np.ndarray:
        """Probability density per Hz at frequencies f."""
        f = np.asarray(f, dtype=float)
        out = np.zeros_like(f)
        for c in self.components:
            z = (f - c.center_hz) / c.sigma_hz
            out += c.weight * np.exp(-0.5 * z * z) / (c.sigma_hz * np.sqrt(2 * np.pi))
        return out

    def support(self, n_sigmas: float) -> tuple[float, float]:
        lo = min(c.center_hz - n_sigmas * c.sigma_hz for c in self.components)
        hi = max(c.center_hz + n_sigmas * c.sigma_hz for c in self.components)
        return lo, hi

    @classmethod
    def single(cls, center_hz: float, sigma_hz: float) -> "GaussianMixtureSpec":
        return cls((GaussianComponent(1.0, center_hz, sigma_hz),))

    @classmethod
    def single_nm(cls, center_nm: float, fwhm_nm: float) -> "GaussianMixtureSpec":
        return cls((GaussianComponent.from_nm(1.0, center_nm, fwhm_nm),))


def grid_for_spectrum(
    spectrum: GaussianMixtureSpec, n_points: int = 512, n_sigmas: float = 4.0
) -> FrequencyGrid:
    """Uniform grid spanning +-n_sigmas around the mixture's support."""
    lo, hi = spectrum.support(n_sigmas)
    return make_uniform_grid(0.5 * (lo + hi), hi - lo, n_points)


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """Single-photon amplitude sampled on a grid, unit norm under the grid weights."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.grid.points.shape:
            raise DomainError("amplitude values must match the grid shape")
        norm2 = float(np.sum(self.grid.weights * np.abs(vals) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"amplitude norm^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "values", vals)

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def gaussian_mixture_amplitude(
    spectrum: GaussianMixtureSpec, grid: FrequencyGrid
) -> SpectralAmplitude:
    """Sample sqrt(mixture density) on the grid and renormalize.

    Warns with TruncationWarning when the grid fails to cover +-3 sigma of any
    component; the renormalization then redistributes the clipped probability.
    """
    lo, hi = spectrum.support(3.0)
    if grid.points[0] > lo or grid.points[-1] < hi:
        warnings.warn(
            "grid does not span +-3 sigma of every mixture component; "
            "the sampled spectrum is truncated and renormalized",
            TruncationWarning,
            stacklevel=2,
        )
    dens = spectrum.density(grid.points)
    total = float(np.sum(grid.weights * dens))
    if total <= 0:
        raise DomainError("mixture density vanishes on the grid")
    vals = np.sqrt(dens / total)
    return SpectralAmplitude(grid, vals)


@dataclass(frozen=True, eq=False)
class JointSpectralAmplitude:
    """Two-photon amplitude g(f_a, f_b) on the product of two grids.

    is_product marks amplitudes built as an outer product; those admit
    factorized overlap integrals downstream.
    """

    grid_a: FrequencyGrid
    grid_b: FrequencyGrid
    values: np.ndarray
    is_product: bool = False
    _factors: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        expected = (self.grid_a.n_points, self.grid_b.n_points)
        if vals.shape != expected:
            raise DomainError(f"joint amplitude must have shape {expected}")
        w2 = np.outer(self.grid_a.weights, self.grid_b.weights)
        norm2 = float(np.sum(w2 * np.abs(vals) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"joint amplitude norm^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "values", vals)

    def joint_density(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def product_jsa(amp_a: SpectralAmplitude, amp_b: SpectralAmplitude) -> JointSpectralAmplitude:
    """Uncorrelated joint amplitude g = g_a(f_a) g_b(f_b)."""
    vals = np.outer(amp_a.values, amp_b.values)
    return JointSpectralAmplitude(
        amp_a.grid,
        amp_b.grid,
        vals,
        is_product=True,
        _factors=(amp_a.values.copy(), amp_b.values.copy()),
    )


def marginal(jsa: JointSpectralAmplitude, photon: str) -> np.ndarray:
    """Marginal probability density per Hz for photon 'a' or 'b'."""
    dens = jsa.joint_density()
    if photon == "a":
        return dens @ jsa.grid_b.weights
    if photon == "b":
        return jsa.grid_a.weights @ dens
    raise DomainError("photon must be 'a' or 'b'")
