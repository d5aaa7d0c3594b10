"""Programmable spectral phases and birefringent elements.

Both devices imprint polarization-dependent spectral phase.  The sign
conventions are fixed so that a phase-slope profile of x (in lambda0 units)
cancels the phase a birefringent element of effective path difference
x * lambda0 accumulates:

* slope profile:  theta_H(f) = -2 pi f x lambda0 / c,  theta_V = 0
* element:        theta_H(f) - theta_V(f) = +2 pi f x lambda0 / c

Only the H-V difference is physical; common phase drops out of every
polarization observable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .constants import DEFAULT_LAMBDA0, SPEED_OF_LIGHT, TWO_PI
from .errors import DomainError
from .spectra import FrequencyGrid


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """Spectral phase for the two polarization components, sampled on a grid."""

    grid: FrequencyGrid
    theta_h: np.ndarray
    theta_v: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.theta_h, dtype=float)
        tv = np.asarray(self.theta_v, dtype=float)
        if th.shape != self.grid.points.shape or tv.shape != self.grid.points.shape:
            raise DomainError("phase arrays must match the grid shape")
        object.__setattr__(self, "theta_h", th)
        object.__setattr__(self, "theta_v", tv)

    @property
    def difference(self) -> np.ndarray:
        """theta_H - theta_V, the physically meaningful part."""
        return self.theta_h - self.theta_v

    def component(self, pol: str) -> np.ndarray:
        if pol == "H":
            return self.theta_h
        if pol == "V":
            return self.theta_v
        raise DomainError("polarization must be 'H' or 'V'")


def zero_phase(grid: FrequencyGrid) -> PhaseProfile:
    z = np.zeros(grid.n_points)
    return PhaseProfile(grid, z, z.copy())


def linear_phase(
    grid: FrequencyGrid, slope_lambda0: float, lambda0: float = DEFAULT_LAMBDA0
) -> PhaseProfile:
    """Slope profile theta_H(f) = -2 pi f slope lambda0 / c applied to H only."""
    theta_h = -TWO_PI * grid.points * (slope_lambda0 * lambda0) / SPEED_OF_LIGHT
    return PhaseProfile(grid, theta_h, np.zeros(grid.n_points))


@dataclass(frozen=True)
class SlmModel:
    """Pixelation model of a spatial light modulator's frequency axis.

    phase_levels: number of addressable phase values, None for continuous.
    """

    n_pixels: int
    covered_bandwidth_hz: float
    center_frequency_hz: float
    phase_levels: int | None = None

    def __post_init__(self):
        if self.n_pixels < 1:
            raise DomainError("slm needs at least one pixel")
        if self.covered_bandwidth_hz <= 0:
            raise DomainError("slm bandwidth must be positive")
        if self.center_frequency_hz <= 0:
            raise DomainError("slm center frequency must be positive")
        if self.phase_levels is not None and self.phase_levels < 2:
            raise DomainError("phase_levels must be at least 2 when quantized")

    @property
    def window(self) -> tuple[float, float]:
        half = self.covered_bandwidth_hz / 2
        return self.center_frequency_hz - half, self.center_frequency_hz + half


def pixelate(profile: PhaseProfile, slm: SlmModel) -> PhaseProfile:
    """Piecewise-constant approximation of a profile on an SLM.

    Grid points inside the covered window take the profile value at their
    pixel's center; points outside the window are left unmodulated (zero
    phase), which is what physically leaks past the device edges.
    Idempotent: pixelating an already pixelated profile changes nothing.
    """
    lo, hi = slm.window
    f = profile.grid.points
    inside = (f >= lo) & (f <= hi)
    if not np.any(inside):
        raise DomainError("slm window does not overlap the grid")

    pixel_width = slm.covered_bandwidth_hz / slm.n_pixels
    idx = np.clip(((f - lo) // pixel_width).astype(int), 0, slm.n_pixels - 1)
    centers = lo + (idx + 0.5) * pixel_width

    out = []
    for comp in (profile.theta_h, profile.theta_v):
        sampled = np.interp(centers, f, comp)
        if slm.phase_levels is not None:
            step = TWO_PI / slm.phase_levels
            sampled = np.round(sampled / step) * step
        out.append(np.where(inside, sampled, 0.0))
    return PhaseProfile(profile.grid, out[0], out[1])


@dataclass(frozen=True)
class IndexModel:
    """Polynomial refractive indices n_H(f), n_V(f); coefficients lowest degree first."""

    n_h_coeffs: tuple[float, ...]
    n_v_coeffs: tuple[float, ...]

    def __post_init__(self):
        if not self.n_h_coeffs or not self.n_v_coeffs:
            raise DomainError("index model needs coefficients for both polarizations")
        object.__setattr__(self, "n_h_coeffs", tuple(float(c) for c in self.n_h_coeffs))
        object.__setattr__(self, "n_v_coeffs", tuple(float(c) for c in self.n_v_coeffs))

    def n_h(self, f: np.ndarray) -> np.ndarray:
        return np.polynomial.polynomial.polyval(f, self.n_h_coeffs)

    def n_v(self, f: np.ndarray) -> np.ndarray:
        return np.polynomial.polynomial.polyval(f, self.n_v_coeffs)

    def birefringence(self, f: np.ndarray) -> np.ndarray:
        return self.n_h(f) - self.n_v(f)


@dataclass(frozen=True)
class BirefringentElement:
    """A dephasing element characterized by its effective path difference.

    effective_path_lambda0 is x in c * delta_n * T = x * lambda0.  With no
    index model the element is purely a constant-birefringence phase ramp;
    with one, the full dispersive phase 2 pi f n(f) T is applied to each
    polarization, with the interaction time T recovered from x at the design
    frequency c / lambda0.
    """

    effective_path_lambda0: float
    lambda0: float = DEFAULT_LAMBDA0
    index_model: IndexModel | None = None

    def __post_init__(self):
        if self.lambda0 <= 0:
            raise DomainError("lambda0 must be positive")

    def scaled(self, fraction: float) -> "BirefringentElement":
        """Partial interaction: same element traversed for a fraction of its length."""
        if fraction < 0:
            raise DomainError("interaction fraction must be non-negative")
        return replace(self, effective_path_lambda0=self.effective_path_lambda0 * fraction)


def element_phase(elem: BirefringentElement, grid: FrequencyGrid) -> PhaseProfile:
    """Spectral phase the element applies to each polarization.

    Constant-birefringence mode puts the whole difference on H with the sign
    opposite to linear_phase, so that matched slope and path difference cancel
    exactly.  Dispersive mode evaluates theta_pol(f) = 2 pi f n_pol(f) T.
    """
    x = elem.effective_path_lambda0
    if elem.index_model is None:
        theta_h = TWO_PI * grid.points * (x * elem.lambda0) / SPEED_OF_LIGHT
        return PhaseProfile(grid, theta_h, np.zeros(grid.n_points))

    model = elem.index_model
    f0 = SPEED_OF_LIGHT / elem.lambda0
    dn0 = float(model.birefringence(np.asarray(f0)))
    if dn0 == 0:
        raise DomainError("index model has zero birefringence at the design frequency")
    interaction_time = x * elem.lambda0 / (SPEED_OF_LIGHT * dn0)

    n_h = model.n_h(grid.points)
    n_v = model.n_v(grid.points)
    for n in (n_h, n_v):
        if not np.all(np.isfinite(n)) or np.any(n <= 0):
            raise DomainError("index model must be finite and positive over the grid")
    theta_h = TWO_PI * grid.points * n_h * interaction_time
    theta_v = TWO_PI * grid.points * n_v * interaction_time
    return PhaseProfile(grid, theta_h, theta_v)


def combine(first: PhaseProfile, second: PhaseProfile) -> PhaseProfile:
    """Phases of two devices traversed in sequence add."""
    if not first.grid.same_as(second.grid):
        raise DomainError("profiles live on different grids")
    return PhaseProfile(
        first.grid, first.theta_h + second.theta_h, first.theta_v + second.theta_v
    )


_ELEMENT_PRESETS: dict[str, BirefringentElement] = {
    # YVO4 crystal stack on the first path
    "yvo4_400": BirefringentElement(400.0),
    # quartz stack on the second path
    "quartz_411": BirefringentElement(411.0),
    # polarization-maintaining fiber, 2 m
    "pm_fiber_1080": BirefringentElement(1080.0),
}


def element_preset(name: str) -> BirefringentElement:
    try:
        return _ELEMENT_PRESETS[name]
    except KeyError:
        raise DomainError(
            f"unknown element preset {name!r}; known: {sorted(_ELEMENT_PRESETS)}"
        ) from None


def element_preset_names() -> tuple[str, ...]:
    return tuple(sorted(_ELEMENT_PRESETS))
