"""Noise-restored teleportation simulator.

Simulates qubit teleportation through birefringent dephasing media using an
auxiliary photon pair whose polarization is entangled with engineered spectral
phase envelopes.  With matched phase slopes the final medium itself undoes the
accumulated dephasing, so the teleported state arrives intact.
"""

__version__ = "0.1.0"

from .constants import DEFAULT_LAMBDA0, SPEED_OF_LIGHT, slope_to_delay
from .errors import ConfigError, DomainError
from .metrics import (
    MetricReport,
    chsh_max,
    concurrence_pure_bipartition,
    concurrence_wootters,
    fidelity,
    purity,
    summarize,
)
from .optics import (
    BirefringentElement,
    IndexModel,
    PhaseProfile,
    SlmModel,
    combine,
    element_phase,
    element_preset,
    element_preset_names,
    linear_phase,
    pixelate,
    zero_phase,
)
from .presets import build_preset, preset_info, preset_names
from .protocol import (
    BELL_LABELS,
    CLASSICAL_FIDELITY_LIMIT,
    CORRECTIONS,
    InputQubit,
    OutcomeResult,
    ScenarioConfig,
    ScenarioResult,
    SideSettings,
    SweepConfig,
    SweepResult,
    apply_correction,
    attach_input,
    bell_density,
    bell_project,
    bell_vector,
    input_preset,
    input_preset_names,
    purification_sweep,
    run_teleportation,
)
from .spectra import (
    FrequencyGrid,
    GaussianComponent,
    GaussianMixtureSpec,
    JointSpectralAmplitude,
    SpectralAmplitude,
    TruncationWarning,
    gaussian_mixture_amplitude,
    grid_for_spectrum,
    make_uniform_grid,
    marginal,
    product_jsa,
)
from .states import (
    Branch,
    DensityMatrix,
    HybridState,
    apply_element,
    apply_profile,
    auxiliary_state,
    decoherence_function,
    prepare_pair,
    reduce_polarization,
)

__all__ = [
    "__version__",
    "BELL_LABELS",
    "Branch",
    "BirefringentElement",
    "CLASSICAL_FIDELITY_LIMIT",
    "CORRECTIONS",
    "ConfigError",
    "DEFAULT_LAMBDA0",
    "DensityMatrix",
    "DomainError",
    "FrequencyGrid",
    "GaussianComponent",
    "GaussianMixtureSpec",
    "HybridState",
    "IndexModel",
    "InputQubit",
    "JointSpectralAmplitude",
    "MetricReport",
    "OutcomeResult",
    "PhaseProfile",
    "ScenarioConfig",
    "ScenarioResult",
    "SideSettings",
    "SlmModel",
    "SPEED_OF_LIGHT",
    "SpectralAmplitude",
    "SweepConfig",
    "SweepResult",
    "TruncationWarning",
    "apply_correction",
    "apply_element",
    "apply_profile",
    "attach_input",
    "auxiliary_state",
    "bell_density",
    "bell_project",
    "bell_vector",
    "build_preset",
    "chsh_max",
    "combine",
    "concurrence_pure_bipartition",
    "concurrence_wootters",
    "decoherence_function",
    "element_phase",
    "element_preset",
    "element_preset_names",
    "fidelity",
    "gaussian_mixture_amplitude",
    "grid_for_spectrum",
    "input_preset",
    "input_preset_names",
    "linear_phase",
    "make_uniform_grid",
    "marginal",
    "pixelate",
    "prepare_pair",
    "preset_info",
    "preset_names",
    "product_jsa",
    "purification_sweep",
    "purity",
    "reduce_polarization",
    "run_teleportation",
    "slope_to_delay",
    "summarize",
    "zero_phase",
]
