"""Quantum information metrics for the teleportation diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .states import DensityMatrix, HybridState, reduce_polarization

PSD_TOL = -1e-9
CLAMP = 1e-12

_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_SIGMA_YY = np.kron(_SIGMA["y"], _SIGMA["y"])


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    m = np.asarray(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("expected a square density matrix")
    return m


def _check_state(m: np.ndarray) -> np.ndarray:
    if np.max(np.abs(m - m.conj().T)) > 1e-8:
        raise DomainError("matrix is not hermitian")
    m = 0.5 * (m + m.conj().T)
    eigs = np.linalg.eigvalsh(m)
    if eigs.min() < PSD_TOL:
        raise DomainError(f"matrix has negative eigenvalue {eigs.min()!r}")
    tr = np.trace(m).real
    if abs(tr - 1.0) > 1e-6:
        raise DomainError(f"matrix trace {tr!r}, expected 1")
    return m


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.where(w < CLAMP, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    r = _check_state(_as_matrix(rho))
    s = _check_state(_as_matrix(sigma))
    if r.shape != s.shape:
        raise DomainError("density matrices must share a dimension")
    sr = _psd_sqrt(r)
    mid = sr @ s @ sr
    w = np.linalg.eigvalsh(0.5 * (mid + mid.conj().T))
    w = np.where(w < CLAMP, 0.0, w)
    val = float(np.sum(np.sqrt(w)) ** 2)
    return min(val, 1.0)


def purity(rho) -> float:
    m = _check_state(_as_matrix(rho))
    return float(np.trace(m @ m).real)


def concurrence_wootters(rho) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing eigenvalues of
    sqrt(sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho)).
    """
    m = _check_state(_as_matrix(rho))
    if m.shape != (4, 4):
        raise DomainError("Wootters concurrence needs a two-qubit state")
    sr = _psd_sqrt(m)
    mid = sr @ _SIGMA_YY @ m.conj() @ _SIGMA_YY @ sr
    w = np.linalg.eigvalsh(0.5 * (mid + mid.conj().T))
    w = np.sqrt(np.where(w < CLAMP, 0.0, w))[::-1]
    return float(max(0.0, w[0] - w[1:].sum()))


def _photon_cut_purity(state: HybridState, side_a: tuple[int, ...]) -> float:
    """tr sigma_A^2 for a photon bipartition of a two-photon hybrid state.

    Works directly on the branch envelopes: the reduced state of side A has
    rank at most the number of branches, and its purity contracts to weighted
    Gram integrals of the envelopes.  Supported for two-photon states with
    one photon per side.
    """
    if state.n_photons != 2:
        raise DomainError("photon-cut concurrence is implemented for two-photon states")
    if side_a not in ((0,), (1,)):
        raise DomainError("cut must put exactly one photon on each side")
    kept = side_a[0]
    other = 1 - kept
    # axis that stays with side A / side B in the envelope arrays
    axis_a = state.env_axis.get(kept)
    axis_b = state.env_axis.get(other)
    if axis_a is None or axis_b is None:
        raise DomainError("both photons must carry a frequency environment")
    w_a = (state.grid_a if axis_a == 0 else state.grid_b).weights
    w_b = (state.grid_a if axis_b == 0 else state.grid_b).weights

    labels = state.labels()

    def oriented(label: str) -> np.ndarray:
        # orient every envelope as (f on side A, f on side B)
        env = state.branches[label].envelope
        return env if axis_a == 0 else env.T

    # K[(l, m)](f, f') = integral over the B-side frequency of
    # E_l(f, f_B) conj(E_m(f', f_B)), an operator on side A's frequency axis
    gram: dict[tuple[str, str], np.ndarray] = {
        (l, m): (oriented(l) * w_b[None, :]) @ oriented(m).conj().T
        for l in labels
        for m in labels
    }

    total = 0.0
    for l1 in labels:
        for l2 in labels:
            if l1[other] != l2[other]:
                continue
            for m1 in labels:
                for m2 in labels:
                    if m1[other] != m2[other]:
                        continue
                    if l1[kept] != m2[kept] or l2[kept] != m1[kept]:
                        continue
                    c = (
                        state.branches[l1].coeff
                        * np.conj(state.branches[l2].coeff)
                        * state.branches[m1].coeff
                        * np.conj(state.branches[m2].coeff)
                    )
                    k1 = gram[(l1, l2)]
                    k2 = gram[(m1, m2)]
                    contraction = np.sum((k1 * w_a[None, :]) * (k2.T * w_a[:, None]))
                    total += (c * contraction).real
    return float(total)


def concurrence_pure_bipartition(state: HybridState, cut) -> float:
    """Entanglement of a pure hybrid state across a bipartition.

    C = sqrt(2 (1 - tr sigma_A^2)) with sigma_A the reduced state of one side.

    cut: a tuple of photon indices forming side A (each photon keeps its own
    frequency environment), or the string 'polarization' for the cut between
    all polarizations and all frequency environments.
    """
    if cut == "polarization":
        sigma = reduce_polarization(state, keep=tuple(range(state.n_photons)))
        p = float(np.trace(sigma.matrix @ sigma.matrix).real)
    else:
        p = _photon_cut_purity(state, tuple(cut))
    p = min(p, 1.0)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - p))))


def correlation_matrix(rho) -> np.ndarray:
    """3x3 matrix T_kl = tr[rho sigma_k x sigma_l] of a two-qubit state."""
    m = _as_matrix(rho)
    if m.shape != (4, 4):
        raise DomainError("correlation matrix needs a two-qubit state")
    t = np.empty((3, 3))
    for i, si in enumerate("xyz"):
        for j, sj in enumerate("xyz"):
            t[i, j] = np.trace(m @ np.kron(_SIGMA[si], _SIGMA[sj])).real
    return t


def chsh_max(rho) -> float:
    """Largest attainable CHSH value 2 sqrt(m1 + m2).

    m1, m2 are the two largest eigenvalues of T^T T built from the spin
    correlation matrix; values above 2 witness Bell-inequality violation,
    2 sqrt(2) is the quantum maximum.
    """
    m = _check_state(_as_matrix(rho))
    t = correlation_matrix(m)
    eigs = np.sort(np.linalg.eigvalsh(t.T @ t))
    return float(2.0 * np.sqrt(max(0.0, eigs[-1] + eigs[-2])))


@dataclass(frozen=True)
class MetricReport:
    """Bundle of scalar diagnostics for one density matrix."""

    fidelity: float | None
    purity: float
    concurrence: float | None
    chsh: float | None

    def as_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "purity": self.purity,
            "concurrence": self.concurrence,
            "chsh": self.chsh,
        }


def summarize(rho, reference=None) -> MetricReport:
    m = _as_matrix(rho)
    fid = fidelity(m, reference) if reference is not None else None
    conc = concurrence_wootters(m) if m.shape == (4, 4) else None
    bell = chsh_max(m) if m.shape == (4, 4) else None
    return MetricReport(fidelity=fid, purity=purity(m), concurrence=conc, chsh=bell)
