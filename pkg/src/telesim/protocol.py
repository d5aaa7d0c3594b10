"""Teleportation of a polarization qubit through dephasing channels.

The pipeline prepares the engineered photon pair, dephases Alice's photon,
attaches the input qubit, projects the input and Alice's photon onto each
Bell state, applies Bob's conditional correction, dephases Bob's photon and
reads out the received polarization state.  A companion sweep routine scans
compensation parameters for a bare entangled pair and reports its fidelity
to the targeted Bell state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_LAMBDA0
from .errors import DomainError
from .metrics import chsh_max, concurrence_pure_bipartition, concurrence_wootters, fidelity
from .optics import (
    BirefringentElement,
    IndexModel,
    PhaseProfile,
    SlmModel,
    linear_phase,
    pixelate,
    zero_phase,
)
from .spectra import (
    GaussianMixtureSpec,
    gaussian_mixture_amplitude,
    grid_for_spectrum,
    product_jsa,
)
from .states import (
    Branch,
    DensityMatrix,
    HybridState,
    apply_element,
    auxiliary_state,
    decoherence_function,
    prepare_pair,
    reduce_polarization,
)

SQRT_HALF = 1.0 / np.sqrt(2.0)

CLASSICAL_FIDELITY_LIMIT = 2.0 / 3.0

QUBIT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class InputQubit:
    """Pure polarization qubit alpha |H> + beta |V>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm2 = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm2 - 1.0) > QUBIT_NORM_TOL:
            raise DomainError(f"input qubit norm^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    def ket(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def density(self) -> DensityMatrix:
        k = self.ket()
        return DensityMatrix(np.outer(k, k.conj()))


_INPUT_PRESETS: dict[str, tuple[complex, complex]] = {
    "h": (1.0, 0.0),
    "v": (0.0, 1.0),
    "plus": (SQRT_HALF, SQRT_HALF),
    "minus": (SQRT_HALF, -SQRT_HALF),
    "right": (SQRT_HALF, 1j * SQRT_HALF),
    "left": (SQRT_HALF, -1j * SQRT_HALF),
}


def input_preset(name: str) -> InputQubit:
    try:
        alpha, beta = _INPUT_PRESETS[name]
    except KeyError:
        raise DomainError(
            f"unknown input preset {name!r}; known: {sorted(_INPUT_PRESETS)}"
        ) from None
    return InputQubit(alpha, beta)


def input_preset_names() -> tuple[str, ...]:
    return tuple(sorted(_INPUT_PRESETS))


BELL_LABELS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")

# each Bell state as (two-photon label, sign) pairs, amplitude sign / sqrt(2)
_BELL_COMPONENTS: dict[str, tuple[tuple[str, float], ...]] = {
    "phi_plus": (("HH", 1.0), ("VV", 1.0)),
    "phi_minus": (("HH", 1.0), ("VV", -1.0)),
    "psi_plus": (("HV", 1.0), ("VH", 1.0)),
    "psi_minus": (("HV", 1.0), ("VH", -1.0)),
}

_PAIR_INDEX = {"HH": 0, "HV": 1, "VH": 2, "VV": 3}


def bell_vector(label: str) -> np.ndarray:
    """Bell state as a 4-vector in the HH, HV, VH, VV basis."""
    try:
        components = _BELL_COMPONENTS[label]
    except KeyError:
        raise DomainError(f"unknown Bell label {label!r}; known: {BELL_LABELS}") from None
    vec = np.zeros(4, dtype=complex)
    for pair, sign in components:
        vec[_PAIR_INDEX[pair]] = sign * SQRT_HALF
    return vec


def bell_density(label: str) -> DensityMatrix:
    vec = bell_vector(label)
    return DensityMatrix(np.outer(vec, vec.conj()))


# Bob's conditional correction for each projection outcome
CORRECTIONS: dict[str, np.ndarray] = {
    "phi_plus": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "phi_minus": np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex),
    "psi_plus": np.eye(2, dtype=complex),
    "psi_minus": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def attach_input(pair: HybridState, qubit: InputQubit) -> HybridState:
    """Product of the input qubit (photon 0) with the entangled pair (photons 1, 2).

    The input photon is spectrally separable, so it carries no frequency axis
    of its own.  Basis inputs produce two branches, generic inputs four.
    """
    if pair.n_photons != 2:
        raise DomainError("attach_input expects a two-photon pair state")
    branches = {}
    for pol, coeff in (("H", qubit.alpha), ("V", qubit.beta)):
        if coeff == 0:
            continue
        for label, br in pair.branches.items():
            branches[pol + label] = Branch(coeff * br.coeff, br.envelope)
    env_axis = {photon + 1: axis for photon, axis in pair.env_axis.items()}
    return HybridState(3, branches, pair.grid_a, pair.grid_b, env_axis)


def bell_project(state: HybridState, outcome: str) -> tuple[float, HybridState | None]:
    """Project photons 0 and 1 onto a Bell state.

    Returns the outcome probability and the collapsed, renormalized state of
    photon 2.  Both frequency axes survive in the envelopes: the measured
    photon's spectrum becomes part of the environment.  A zero-probability
    outcome returns (0.0, None).
    """
    if state.n_photons != 3:
        raise DomainError("bell_project expects the three-photon protocol state")
    if outcome not in _BELL_COMPONENTS:
        raise DomainError(f"unknown Bell label {outcome!r}; known: {BELL_LABELS}")
    amplitudes = {pair: sign * SQRT_HALF for pair, sign in _BELL_COMPONENTS[outcome]}

    # <Bell|_{01} Psi: per surviving polarization, a scalar times an envelope,
    # summed over contributing branches
    parts: dict[str, list[tuple[complex, np.ndarray]]] = {}
    for label, br in state.branches.items():
        pair_label = label[:2]
        if pair_label not in amplitudes:
            continue
        scalar = np.conj(amplitudes[pair_label]) * br.coeff
        parts.setdefault(label[2], []).append((scalar, br.envelope))

    if not parts:
        return 0.0, None
    w = np.outer(state.grid_a.weights, state.grid_b.weights)
    collapsed: dict[str, tuple[complex, np.ndarray]] = {}
    probability = 0.0
    for pol, contributions in sorted(parts.items()):
        if len(contributions) == 1:
            coeff, env = contributions[0]
        else:
            coeff = 1.0 + 0.0j
            env = contributions[0][0] * contributions[0][1]
            for scalar, e in contributions[1:]:
                env = env + scalar * e
        probability += abs(coeff) ** 2 * float(np.sum(w * np.abs(env) ** 2))
        collapsed[pol] = (coeff, env)
    if probability < 1e-30:
        return 0.0, None

    scale = 1.0 / np.sqrt(probability)
    branches = {pol: Branch(coeff * scale, env) for pol, (coeff, env) in collapsed.items()}
    env_axis = {0: state.env_axis[2]} if 2 in state.env_axis else {}
    return float(probability), HybridState(
        1, branches, state.grid_a, state.grid_b, env_axis
    )


def apply_correction(state: HybridState, outcome: str) -> HybridState:
    """Bob's conditional unitary on the collapsed single-photon state.

    The correction mixes the branch coefficient vector (c_H, c_V) while each
    polarization keeps its envelope slot.  Together with the polarization
    rotation this amounts to the environment-phase relabeling that makes all
    four outcomes land on the same received state, which is what a correction
    conditioned only on the projection outcome must achieve.
    """
    if state.n_photons != 1:
        raise DomainError("apply_correction expects a single-photon state")
    if outcome not in CORRECTIONS:
        raise DomainError(f"unknown Bell label {outcome!r}; known: {BELL_LABELS}")
    u = CORRECTIONS[outcome]
    present = [p for p in "HV" if p in state.branches]
    if len(present) == 2:
        coeffs = np.array(
            [state.branches["H"].coeff, state.branches["V"].coeff], dtype=complex
        )
        new_coeffs = u @ coeffs
        branches = {
            pol: Branch(new_coeffs[i], state.branches[pol].envelope)
            for i, pol in enumerate("HV")
        }
    else:
        # one populated slot: the (signed-permutation) correction relocates it
        src = present[0]
        j = "HV".index(src)
        rows = np.flatnonzero(u[:, j])
        if rows.size != 1:
            raise DomainError(
                "correction mixes polarizations but the state has only one envelope slot"
            )
        i = int(rows[0])
        br = state.branches[src]
        branches = {"HV"[i]: Branch(u[i, j] * br.coeff, br.envelope)}
    return HybridState(1, branches, state.grid_a, state.grid_b, state.env_axis)


@dataclass(frozen=True)
class SideSettings:
    """Devices on one side of the link.

    use_slm imprints the programmed slope profile; slm optionally pixelates it
    through a modulator model.  noise is the dephasing element this photon
    traverses, None for a clean path.
    """

    use_slm: bool = False
    slope_lambda0: float = 0.0
    noise: BirefringentElement | None = None
    slm: SlmModel | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    """A complete teleportation run: spectra, devices on both sides, input."""

    name: str
    input_name: str
    qubit: InputQubit
    spectrum_a: GaussianMixtureSpec
    spectrum_b: GaussianMixtureSpec
    side_a: SideSettings
    side_b: SideSettings
    grid_points: int = 512
    span_sigmas: float = 4.0
    lambda0: float = DEFAULT_LAMBDA0


@dataclass(frozen=True)
class StageDecoherence:
    """Pair coherence amplitude at a point in the protocol timeline.

    fraction_a / fraction_b are the traversed fractions of each side's
    dephasing element (0 before it, 1 after it).
    """

    fraction_a: float
    fraction_b: float
    value: complex

    @property
    def magnitude(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class OutcomeResult:
    """Bob's received state for one projection outcome, before and after his noise."""

    outcome: str
    probability: float
    state_pre_noise: DensityMatrix | None
    state_final: DensityMatrix | None
    fidelity_pre_noise: float
    fidelity_final: float


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    outcomes: tuple[OutcomeResult, ...]
    average_fidelity: float
    average_fidelity_pre_noise: float
    stages: tuple[StageDecoherence, ...]
    coherence_final: complex
    pair_state: DensityMatrix
    pair_concurrence: float
    pair_chsh: float
    pair_env_concurrence: float


def _device_phase(
    side: SideSettings, grid, lambda0: float
) -> PhaseProfile:
    if not side.use_slm:
        return zero_phase(grid)
    profile = linear_phase(grid, side.slope_lambda0, lambda0)
    if side.slm is not None:
        profile = pixelate(profile, side.slm)
    return profile


def _pure_fidelity(rho: DensityMatrix, ket: np.ndarray) -> float:
    return float(np.real(ket.conj() @ rho.matrix @ ket))


def run_teleportation(config: ScenarioConfig) -> ScenarioResult:
    """Execute one teleportation scenario and gather all observables."""
    grid_a = grid_for_spectrum(config.spectrum_a, config.grid_points, config.span_sigmas)
    grid_b = grid_for_spectrum(config.spectrum_b, config.grid_points, config.span_sigmas)
    amp_a = gaussian_mixture_amplitude(config.spectrum_a, grid_a)
    amp_b = gaussian_mixture_amplitude(config.spectrum_b, grid_b)
    jsa = product_jsa(amp_a, amp_b)

    phase_a = _device_phase(config.side_a, grid_a, config.lambda0)
    phase_b = _device_phase(config.side_b, grid_b, config.lambda0)

    pair = auxiliary_state(jsa, phase_a, phase_b)
    if config.side_a.noise is not None:
        pair = apply_element(pair, 0, config.side_a.noise)

    pair_rho = reduce_polarization(pair, (0, 1))
    pair_concurrence = concurrence_wootters(pair_rho)
    pair_chsh = chsh_max(pair_rho)
    pair_env_concurrence = concurrence_pure_bipartition(pair, "polarization")

    three = attach_input(pair, config.qubit)
    ket = config.qubit.ket()

    outcomes = []
    average_fidelity = 0.0
    average_pre = 0.0
    for outcome in BELL_LABELS:
        probability, bob = bell_project(three, outcome)
        if bob is None:
            outcomes.append(OutcomeResult(outcome, 0.0, None, None, 0.0, 0.0))
            continue
        corrected = apply_correction(bob, outcome)
        rho_pre = reduce_polarization(corrected, (0,))
        fid_pre = _pure_fidelity(rho_pre, ket)
        received = corrected
        if config.side_b.noise is not None:
            received = apply_element(received, 0, config.side_b.noise)
        rho_final = reduce_polarization(received, (0,))
        fid_final = _pure_fidelity(rho_final, ket)
        outcomes.append(
            OutcomeResult(outcome, probability, rho_pre, rho_final, fid_pre, fid_final)
        )
        average_fidelity += probability * fid_final
        average_pre += probability * fid_pre

    stages = tuple(
        StageDecoherence(
            fraction_a,
            fraction_b,
            decoherence_function(
                jsa,
                phase_a,
                phase_b,
                config.side_a.noise,
                config.side_b.noise,
                t_a=fraction_a,
                t_b=fraction_b,
            ),
        )
        for fraction_a, fraction_b in ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0))
    )

    return ScenarioResult(
        config=config,
        outcomes=tuple(outcomes),
        average_fidelity=average_fidelity,
        average_fidelity_pre_noise=average_pre,
        stages=stages,
        coherence_final=stages[-1].value,
        pair_state=pair_rho,
        pair_concurrence=pair_concurrence,
        pair_chsh=pair_chsh,
        pair_env_concurrence=pair_env_concurrence,
    )


_TARGET_BRANCHES: dict[str, tuple[tuple[str, str], tuple[float, float]]] = {
    "phi_plus": (("HH", "VV"), (1.0, 1.0)),
    "phi_minus": (("HH", "VV"), (1.0, -1.0)),
    "psi_plus": (("HV", "VH"), (1.0, 1.0)),
    "psi_minus": (("HV", "VH"), (1.0, -1.0)),
}


@dataclass(frozen=True)
class SweepConfig:
    """Scan one compensation parameter for a bare entangled pair.

    vary='slope' scans the programmed slope on the chosen side against that
    side's fixed dephasing element; vary='thickness' scans the element's
    effective path against a fixed programmed slope.  The other side stays
    clean.  x_values are in units of the design wavelength.
    """

    name: str
    target: str
    side: str  # 'a' or 'b'
    vary: str  # 'slope' or 'thickness'
    x_values: tuple[float, ...]
    spectrum_a: GaussianMixtureSpec
    spectrum_b: GaussianMixtureSpec
    fixed_element: BirefringentElement | None = None  # for vary='slope'
    fixed_slope_lambda0: float = 0.0  # for vary='thickness'
    index_model: IndexModel | None = None  # dispersion for thickness-swept elements
    grid_points: int = 512
    span_sigmas: float = 4.0
    lambda0: float = DEFAULT_LAMBDA0

    def __post_init__(self):
        if self.target not in _TARGET_BRANCHES:
            raise DomainError(f"unknown Bell label {self.target!r}; known: {BELL_LABELS}")
        if self.side not in ("a", "b"):
            raise DomainError("side must be 'a' or 'b'")
        if self.vary not in ("slope", "thickness"):
            raise DomainError("vary must be 'slope' or 'thickness'")
        if self.vary == "slope" and self.fixed_element is None:
            raise DomainError("a slope sweep needs the fixed dephasing element")
        if not self.x_values:
            raise DomainError("sweep needs at least one x value")


@dataclass(frozen=True)
class SweepPoint:
    x_lambda0: float
    fidelity: float


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...]

    def peak(self) -> SweepPoint:
        return max(self.points, key=lambda p: p.fidelity)


def purification_sweep(config: SweepConfig) -> SweepResult:
    """Fidelity of the dephased pair to its target Bell state along the scan."""
    grid_a = grid_for_spectrum(config.spectrum_a, config.grid_points, config.span_sigmas)
    grid_b = grid_for_spectrum(config.spectrum_b, config.grid_points, config.span_sigmas)
    amp_a = gaussian_mixture_amplitude(config.spectrum_a, grid_a)
    amp_b = gaussian_mixture_amplitude(config.spectrum_b, grid_b)
    jsa = product_jsa(amp_a, amp_b)

    photon = 0 if config.side == "a" else 1
    active_grid = grid_a if config.side == "a" else grid_b
    labels, signs = _TARGET_BRANCHES[config.target]
    target_rho = bell_density(config.target)

    points = []
    for x in config.x_values:
        if config.vary == "slope":
            profile = linear_phase(active_grid, x, config.lambda0)
            element = config.fixed_element
        else:
            profile = linear_phase(active_grid, config.fixed_slope_lambda0, config.lambda0)
            element = BirefringentElement(x, config.lambda0, config.index_model)
        phase_a = profile if config.side == "a" else None
        phase_b = profile if config.side == "b" else None
        pair = prepare_pair(jsa, phase_a, phase_b, labels, signs)
        if element is not None:
            pair = apply_element(pair, photon, element)
        rho = reduce_polarization(pair, (0, 1))
        points.append(SweepPoint(float(x), fidelity(rho, target_rho)))
    return SweepResult(config, tuple(points))
