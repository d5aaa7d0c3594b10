"""Polarization-frequency hybrid states and their reductions.

A hybrid state is a sparse superposition of polarization branches, each
carrying a joint spectral envelope over the photon pair's frequency axes:

    |Psi> = sum_label  c_label |label> |E_label(f_a, f_b)>

Labels are strings over {H, V}, one character per photon.  Envelopes always
span both frequency axes even after photons are measured away, because the
frequency degrees of freedom survive as an environment.  env_axis records
which remaining photon's polarization still couples to which frequency axis
(0 for f_a, 1 for f_b); photons without an entry (the teleportee) carry no
frequency environment of their own.

All inner products use the grids' quadrature weights, the same weights the
amplitudes were normalized with, so perfectly compensated phases reproduce
unit coherence exactly rather than up to discretization error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import DomainError
from .optics import BirefringentElement, PhaseProfile, element_phase
from .spectra import FrequencyGrid, JointSpectralAmplitude

NORM_TOL = 1e-9
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
EIGENVALUE_FLOOR = -1e-9


class Branch(NamedTuple):
    coeff: complex
    envelope: np.ndarray  # shape (n_a, n_b)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated polarization density matrix (2x2 or 4x4 here)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise DomainError("density matrix is not hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix trace {np.trace(m).real!r}, expected 1")
        eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        if eigs.min() < EIGENVALUE_FLOOR:
            raise DomainError(f"density matrix has negative eigenvalue {eigs.min()!r}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class HybridState:
    """Sparse branch decomposition of a pure polarization-frequency state."""

    n_photons: int
    branches: Mapping[str, Branch]
    grid_a: FrequencyGrid
    grid_b: FrequencyGrid
    env_axis: Mapping[int, int]

    def __post_init__(self):
        if self.n_photons < 1:
            raise DomainError("state needs at least one photon")
        if not self.branches:
            raise DomainError("state needs at least one branch")
        shape = (self.grid_a.n_points, self.grid_b.n_points)
        branches = {}
        for label, br in self.branches.items():
            if len(label) != self.n_photons or any(ch not in "HV" for ch in label):
                raise DomainError(f"bad branch label {label!r}")
            env = np.asarray(br.envelope, dtype=complex)
            if env.shape != shape:
                raise DomainError(f"branch {label!r} envelope must have shape {shape}")
            branches[label] = Branch(complex(br.coeff), env)
        for photon, axis in self.env_axis.items():
            if not 0 <= photon < self.n_photons:
                raise DomainError(f"env_axis photon {photon} out of range")
            if axis not in (0, 1):
                raise DomainError("env_axis values must be 0 (f_a) or 1 (f_b)")
        if len(set(self.env_axis.values())) != len(self.env_axis):
            raise DomainError("two photons cannot share a frequency axis")
        object.__setattr__(self, "branches", branches)
        object.__setattr__(self, "env_axis", dict(self.env_axis))
        norm2 = self._norm_squared()
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"state norm^2 = {norm2!r}, expected 1")

    def _weight_matrix(self) -> np.ndarray:
        return np.outer(self.grid_a.weights, self.grid_b.weights)

    def _norm_squared(self) -> float:
        w = self._weight_matrix()
        return float(
            sum(
                abs(br.coeff) ** 2 * np.sum(w * np.abs(br.envelope) ** 2)
                for br in self.branches.values()
            ).real
        )

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.branches))

    def envelope_overlap(self, label_bra: str, label_ket: str) -> complex:
        """<E_bra | E_ket> under the quadrature weights."""
        w = self._weight_matrix()
        bra = self.branches[label_bra].envelope
        ket = self.branches[label_ket].envelope
        return complex(np.sum(w * np.conj(bra) * ket))


def auxiliary_state(
    jsa: JointSpectralAmplitude,
    phase_a: PhaseProfile | None = None,
    phase_b: PhaseProfile | None = None,
) -> HybridState:
    """Entangled photon pair with anticorrelated polarizations and imprinted phases.

    Branch HV acquires exp(i[theta_aH(f_a) + theta_bV(f_b)]) and branch VH the
    swapped assignment, producing the hybrid polarization-frequency state the
    protocol starts from.
    """
    return prepare_pair(jsa, phase_a, phase_b, branch_labels=("HV", "VH"), signs=(1.0, 1.0))


def prepare_pair(
    jsa: JointSpectralAmplitude,
    phase_a: PhaseProfile | None,
    phase_b: PhaseProfile | None,
    branch_labels: tuple[str, str],
    signs: tuple[float, float],
) -> HybridState:
    """Two-branch photon pair with per-branch polarization phases imprinted."""
    for prof, grid, side in ((phase_a, jsa.grid_a, "a"), (phase_b, jsa.grid_b, "b")):
        if prof is not None and not prof.grid.same_as(grid):
            raise DomainError(f"phase profile for photon {side} is on a different grid")

    def phased_envelope(label: str) -> np.ndarray:
        env = jsa.values
        if phase_a is not None:
            env = env * np.exp(1j * phase_a.component(label[0]))[:, None]
        if phase_b is not None:
            env = env * np.exp(1j * phase_b.component(label[1]))[None, :]
        return env

    amp = 1.0 / np.sqrt(2.0)
    branches = {
        label: Branch(amp * sign, phased_envelope(label))
        for label, sign in zip(branch_labels, signs)
    }
    return HybridState(
        n_photons=2,
        branches=branches,
        grid_a=jsa.grid_a,
        grid_b=jsa.grid_b,
        env_axis={0: 0, 1: 1},
    )


def apply_profile(state: HybridState, photon: int, profile: PhaseProfile) -> HybridState:
    """Imprint a polarization-dependent spectral phase on one photon.

    Each branch's envelope is multiplied by exp(i theta_pol(f)) along the
    frequency axis that photon couples to, with pol the branch's label
    character for that photon.
    """
    if photon not in state.env_axis:
        raise DomainError(f"photon {photon} carries no frequency environment")
    axis = state.env_axis[photon]
    grid = state.grid_a if axis == 0 else state.grid_b
    if not profile.grid.same_as(grid):
        raise DomainError("profile grid does not match the photon's frequency grid")

    phases = {
        pol: np.exp(1j * profile.component(pol)) for pol in "HV"
    }
    new_branches = {}
    for label, br in state.branches.items():
        ph = phases[label[photon]]
        env = br.envelope * (ph[:, None] if axis == 0 else ph[None, :])
        new_branches[label] = Branch(br.coeff, env)
    return HybridState(
        state.n_photons, new_branches, state.grid_a, state.grid_b, state.env_axis
    )


def apply_element(
    state: HybridState,
    photon: int,
    elem: BirefringentElement,
    fraction: float = 1.0,
) -> HybridState:
    """Dephase one photon in a birefringent element.

    fraction < 1 models a partial traversal by scaling the effective path
    difference.
    """
    if photon not in state.env_axis:
        raise DomainError(f"photon {photon} carries no frequency environment")
    axis = state.env_axis[photon]
    grid = state.grid_a if axis == 0 else state.grid_b
    scaled = elem if fraction == 1.0 else elem.scaled(fraction)
    return apply_profile(state, photon, element_phase(scaled, grid))


def reduce_polarization(state: HybridState, keep: Iterable[int]) -> DensityMatrix:
    """Trace out all frequency environments and the non-kept polarizations.

    Basis ordering of the result: labels over the kept photons (ascending
    photon index) with H before V, e.g. HH, HV, VH, VV for two photons.
    """
    keep = tuple(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= p < state.n_photons for p in keep):
        raise DomainError(f"invalid photon selection {keep!r}")
    if not keep:
        raise DomainError("must keep at least one photon")
    keep = tuple(sorted(keep))
    traced = tuple(p for p in range(state.n_photons) if p not in keep)

    def split(label: str) -> tuple[str, str]:
        return (
            "".join(label[p] for p in keep),
            "".join(label[p] for p in traced),
        )

    dim = 2 ** len(keep)
    index = {}
    for i in range(dim):
        bits = format(i, f"0{len(keep)}b")
        index["".join("H" if b == "0" else "V" for b in bits)] = i

    rho = np.zeros((dim, dim), dtype=complex)
    items = list(state.branches.items())
    for label_k, br_k in items:
        kept_k, traced_k = split(label_k)
        for label_b, br_b in items:
            kept_b, traced_b = split(label_b)
            if traced_k != traced_b:
                continue  # orthogonal on the traced polarizations
            overlap = state.envelope_overlap(label_b, label_k)
            rho[index[kept_k], index[kept_b]] += br_k.coeff * np.conj(br_b.coeff) * overlap
    return DensityMatrix(rho)


def _phase_difference(
    grid: FrequencyGrid,
    profile: PhaseProfile | None,
    elem: BirefringentElement | None,
    fraction: float,
) -> np.ndarray:
    """Accumulated H-V phase difference on one photon: device profile plus element."""
    total = np.zeros(grid.n_points)
    if profile is not None:
        if not profile.grid.same_as(grid):
            raise DomainError("phase profile grid does not match the spectrum grid")
        total = total + profile.difference
    if elem is not None:
        scaled = elem if fraction == 1.0 else elem.scaled(fraction)
        total = total + element_phase(scaled, grid).difference
    return total


def decoherence_function(
    jsa: JointSpectralAmplitude,
    phase_a: PhaseProfile | None = None,
    phase_b: PhaseProfile | None = None,
    elem_a: BirefringentElement | None = None,
    elem_b: BirefringentElement | None = None,
    t_a: float = 1.0,
    t_b: float = 1.0,
    method: str = "auto",
) -> complex:
    """Coherence amplitude of the anticorrelated pair under accumulated phases.

    Evaluates the spectrum-weighted phase-mismatch integral

        Lambda = integral |g(f_a, f_b)|^2
                 exp(i [theta_b(f_b) - theta_a(f_a)]) df_a df_b

    with theta_j the total H-V phase difference photon j has accumulated
    (device profile plus element at interaction fraction t_j).  Its magnitude
    is the surviving fraction of the pair's polarization coherence; matched
    profile and element give exactly 1.

    For product spectra the double integral factorizes into Lambda_a times
    the conjugate of Lambda_b, each a one-dimensional integral; method='dense'
    forces the direct double sum instead.
    """
    theta_a = _phase_difference(jsa.grid_a, phase_a, elem_a, t_a)
    theta_b = _phase_difference(jsa.grid_b, phase_b, elem_b, t_b)

    if method not in ("auto", "dense"):
        raise DomainError("method must be 'auto' or 'dense'")
    use_product = jsa.is_product and jsa._factors is not None and method == "auto"

    if use_product:
        dens_a = np.abs(jsa._factors[0]) ** 2
        dens_b = np.abs(jsa._factors[1]) ** 2
        lam_a = np.sum(jsa.grid_a.weights * dens_a * np.exp(-1j * theta_a))
        lam_b = np.sum(jsa.grid_b.weights * dens_b * np.exp(-1j * theta_b))
        value = complex(lam_a * np.conj(lam_b))
    else:
        w2 = np.outer(jsa.grid_a.weights, jsa.grid_b.weights)
        kernel = np.exp(-1j * theta_a)[:, None] * np.exp(1j * theta_b)[None, :]
        value = complex(np.sum(w2 * jsa.joint_density() * kernel))

    if abs(value) > 1.0 + 1e-10:
        raise DomainError(f"coherence magnitude {abs(value)!r} exceeds 1")
    return value
