"""Built-in scenario batches and sweep families.

The presets bundle the reference experiment layout: photon pairs at 780 nm
with 2 nm / 3 nm interference-filter spectra, dephasing elements of 400 and
411 design wavelengths on the two paths, and compensation slopes of 446 and
429 design wavelengths.  Side a is Alice's photon, side b is Bob's.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .constants import DEFAULT_LAMBDA0, SPEED_OF_LIGHT
from .errors import DomainError
from .optics import BirefringentElement, IndexModel, SlmModel, element_preset
from .protocol import (
    BELL_LABELS,
    ScenarioConfig,
    SideSettings,
    SweepConfig,
    input_preset,
)
from .spectra import GaussianMixtureSpec

CENTER_NM = 780.0
FWHM_A_NM = 2.0
FWHM_B_NM = 3.0

# compensation slopes calibrated against the 400 / 411 elements
SLOPE_A = 446.0
SLOPE_B = 429.0

SLM_PIXELS = 150
SLM_WINDOW_NM = 3.5


def default_spectra() -> tuple[GaussianMixtureSpec, GaussianMixtureSpec]:
    """Single-Gaussian filter spectra: 2 nm FWHM for side a, 3 nm for side b."""
    return (
        GaussianMixtureSpec.single_nm(CENTER_NM, FWHM_A_NM),
        GaussianMixtureSpec.single_nm(CENTER_NM, FWHM_B_NM),
    )


def default_slm() -> SlmModel:
    """150-pixel modulator covering a 3.5 nm window around 780 nm."""
    center_hz = SPEED_OF_LIGHT / (CENTER_NM * 1e-9)
    bandwidth_hz = SPEED_OF_LIGHT * (SLM_WINDOW_NM * 1e-9) / (CENTER_NM * 1e-9) ** 2
    return SlmModel(
        n_pixels=SLM_PIXELS,
        covered_bandwidth_hz=bandwidth_hz,
        center_frequency_hz=center_hz,
    )


_BATCH_INPUTS = ("plus", "minus", "right", "left")


def placement_comparison(grid_points: int = 512) -> list[ScenarioConfig]:
    """Teleportation batch over noise placements, compensation on/off, 4 inputs.

    Scenario layout names: 'clean' (reference, no devices), then each noise
    placement (alice / bob / both) with compensation on ('compensated') and
    off ('bare').  Devices sit only on noisy sides; profiles are ideal
    (unpixelated), matching the analytic expectations.
    """
    spectrum_a, spectrum_b = default_spectra()
    noise_a = element_preset("yvo4_400")
    noise_b = element_preset("quartz_411")
    comp_a = SideSettings(use_slm=True, slope_lambda0=SLOPE_A, noise=noise_a)
    comp_b = SideSettings(use_slm=True, slope_lambda0=SLOPE_B, noise=noise_b)
    bare_a = SideSettings(noise=noise_a)
    bare_b = SideSettings(noise=noise_b)
    clean = SideSettings()
    layouts = (
        ("clean", clean, clean),
        ("alice-compensated", comp_a, clean),
        ("bob-compensated", clean, comp_b),
        ("both-compensated", comp_a, comp_b),
        ("alice-bare", bare_a, clean),
        ("bob-bare", clean, bare_b),
        ("both-bare", bare_a, bare_b),
    )
    return [
        ScenarioConfig(
            name=layout_name,
            input_name=input_name,
            qubit=input_preset(input_name),
            spectrum_a=spectrum_a,
            spectrum_b=spectrum_b,
            side_a=side_a,
            side_b=side_b,
            grid_points=grid_points,
        )
        for layout_name, side_a, side_b in layouts
        for input_name in _BATCH_INPUTS
    ]


def restoration_sweeps(grid_points: int = 512) -> list[SweepConfig]:
    """Pair restoration scans for every Bell target.

    Side a: slope scan 0..600 against the 400-wavelength element.  Side b:
    element thickness scan 0..600 at the fixed slope 429.  Integer steps keep
    the carrier phase locked so the curves trace the coherence envelope.
    """
    spectrum_a, spectrum_b = default_spectra()
    x_values = tuple(float(x) for x in range(0, 601, 5))
    sweeps = []
    for target in BELL_LABELS:
        sweeps.append(
            SweepConfig(
                name=f"{target}-alice-slope",
                target=target,
                side="a",
                vary="slope",
                x_values=x_values,
                spectrum_a=spectrum_a,
                spectrum_b=spectrum_b,
                fixed_element=element_preset("yvo4_400"),
                grid_points=grid_points,
            )
        )
        sweeps.append(
            SweepConfig(
                name=f"{target}-bob-thickness",
                target=target,
                side="b",
                vary="thickness",
                x_values=x_values,
                spectrum_a=spectrum_a,
                spectrum_b=spectrum_b,
                fixed_slope_lambda0=SLOPE_B,
                grid_points=grid_points,
            )
        )
    return sweeps


def fiber_sweep(grid_points: int = 512) -> list[SweepConfig]:
    """Bob-side slope scan against the 1080-wavelength polarization-maintaining fiber."""
    spectrum_a, spectrum_b = default_spectra()
    return [
        SweepConfig(
            name="psi_plus-bob-fiber-slope",
            target="psi_plus",
            side="b",
            vary="slope",
            x_values=tuple(float(x) for x in range(930, 1231, 5)),
            spectrum_a=spectrum_a,
            spectrum_b=spectrum_b,
            fixed_element=element_preset("pm_fiber_1080"),
            grid_points=grid_points,
        )
    ]


def dispersive_element() -> BirefringentElement:
    """400-wavelength element with quadratic birefringence dispersion.

    The birefringence is dn(f) = 0.2 + k (f - f0) + q (f - f0)^2 around the
    design frequency, strong enough that the best compensating slope sits
    well above the 400-wavelength nominal path difference.
    """
    f0 = SPEED_OF_LIGHT / DEFAULT_LAMBDA0
    base = 1.95
    dn0 = 0.2
    k = 5.984139867854849e-17  # Hz^-1
    q = 5e-29  # Hz^-2
    # expand dn(f - f0) into absolute-frequency polynomial coefficients
    c0 = base + dn0 - k * f0 + q * f0 * f0
    c1 = k - 2.0 * q * f0
    c2 = q
    model = IndexModel(n_h_coeffs=(c0, c1, c2), n_v_coeffs=(base,))
    return BirefringentElement(400.0, index_model=model)


def dispersion_sweep(grid_points: int = 512) -> list[SweepConfig]:
    """Alice-side slope scan against the dispersive 400-wavelength element."""
    spectrum_a, spectrum_b = default_spectra()
    return [
        SweepConfig(
            name="psi_plus-alice-dispersive-slope",
            target="psi_plus",
            side="a",
            vary="slope",
            x_values=tuple(float(x) for x in range(300, 601, 2)),
            spectrum_a=spectrum_a,
            spectrum_b=spectrum_b,
            fixed_element=dispersive_element(),
            grid_points=grid_points,
        )
    ]


@dataclass(frozen=True)
class PresetInfo:
    name: str
    kind: str  # 'teleportation' or 'sweep'
    description: str
    parameters: tuple[tuple[str, float], ...]


_COMMON_PARAMETERS = (
    ("center_nm", CENTER_NM),
    ("fwhm_a_nm", FWHM_A_NM),
    ("fwhm_b_nm", FWHM_B_NM),
)

_PRESETS: dict[str, tuple[str, str, tuple[tuple[str, float], ...]]] = {
    "placement-comparison": (
        "teleportation",
        "Teleport +, -, R and L through dephasing elements on Alice's path "
        "(400 wavelengths), Bob's path (411 wavelengths) and both, with "
        "compensation slopes 446 / 429 switched on and off, plus a clean "
        "reference layout.",
        _COMMON_PARAMETERS
        + (
            ("noise_a_lambda0", 400.0),
            ("noise_b_lambda0", 411.0),
            ("slope_a_lambda0", SLOPE_A),
            ("slope_b_lambda0", SLOPE_B),
        ),
    ),
    "restoration-sweeps": (
        "sweep",
        "Pair restoration for each Bell target: Alice-side slope scans 0..600 "
        "against the 400-wavelength element, and Bob-side thickness scans "
        "0..600 at fixed slope 429.",
        _COMMON_PARAMETERS
        + (
            ("noise_a_lambda0", 400.0),
            ("fixed_slope_b_lambda0", SLOPE_B),
            ("x_step_lambda0", 5.0),
        ),
    ),
    "fiber-sweep": (
        "sweep",
        "Bob-side slope scan 930..1230 against a polarization-maintaining "
        "fiber with a 1080-wavelength effective path difference.",
        _COMMON_PARAMETERS + (("noise_b_lambda0", 1080.0), ("x_step_lambda0", 5.0)),
    ),
    "dispersion-sweep": (
        "sweep",
        "Alice-side slope scan 300..600 against a quadratic-dispersion element "
        "of 400-wavelength nominal path; dispersion pushes the optimum slope "
        "above 400.",
        _COMMON_PARAMETERS + (("noise_a_lambda0", 400.0), ("x_step_lambda0", 2.0)),
    ),
}

_BUILDERS = {
    "placement-comparison": placement_comparison,
    "restoration-sweeps": restoration_sweeps,
    "fiber-sweep": fiber_sweep,
    "dispersion-sweep": dispersion_sweep,
}


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESETS)


def preset_info(name: str) -> PresetInfo:
    try:
        kind, description, parameters = _PRESETS[name]
    except KeyError:
        raise DomainError(
            f"unknown preset {name!r}; known: {sorted(_PRESETS)}"
        ) from None
    return PresetInfo(name, kind, description, parameters)


def build_preset(
    name: str,
    grid_points: int | None = None,
    index_model: IndexModel | None = None,
) -> tuple[str, list]:
    """Instantiate a preset; returns (kind, configs).

    grid_points overrides the default resolution.  index_model, when given,
    attaches dispersion to every noise element in the preset.
    """
    info = preset_info(name)
    builder = _BUILDERS[name]
    configs = builder(grid_points) if grid_points is not None else builder()
    if index_model is not None:
        configs = [attach_dispersion(cfg, index_model) for cfg in configs]
    return info.kind, configs


def attach_dispersion(config, index_model: IndexModel):
    """Give every dephasing element in a config the supplied index model."""

    def with_model(elem: BirefringentElement | None) -> BirefringentElement | None:
        if elem is None:
            return None
        return replace(elem, index_model=index_model)

    if isinstance(config, ScenarioConfig):
        return replace(
            config,
            side_a=replace(config.side_a, noise=with_model(config.side_a.noise)),
            side_b=replace(config.side_b, noise=with_model(config.side_b.noise)),
        )
    if isinstance(config, SweepConfig):
        return replace(
            config,
            fixed_element=with_model(config.fixed_element),
            index_model=index_model,
        )
    raise DomainError(f"cannot attach dispersion to {type(config).__name__}")
