"""Fidelity, concurrence and CHSH diagnostics, checked against independent oracles."""

import numpy as np
import pytest

from conftest import random_density, small_jsa, small_pair
from telesim.errors import DomainError
from telesim.metrics import (
    MetricReport,
    chsh_max,
    concurrence_pure_bipartition,
    concurrence_wootters,
    correlation_matrix,
    fidelity,
    purity,
    summarize,
)
from telesim.optics import BirefringentElement, linear_phase
from telesim.protocol import bell_density
from telesim.states import (
    apply_element,
    auxiliary_state,
    decoherence_function,
    prepare_pair,
    reduce_polarization,
)
from test_states import dense_state_vector

SQRT_HALF = 1.0 / np.sqrt(2.0)


# ---------------------------------------------------------------- fidelity


def test_fidelity_of_a_state_with_itself(rng):
    for _ in range(10):
        rho = random_density(rng, 4)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_of_orthogonal_pure_states():
    h = np.diag([1.0, 0.0]).astype(complex)
    v = np.diag([0.0, 1.0]).astype(complex)
    assert fidelity(h, v) == pytest.approx(0.0, abs=1e-12)


def test_fidelity_of_plus_against_the_maximally_mixed_state():
    plus = 0.5 * np.ones((2, 2), dtype=complex)
    assert fidelity(plus, np.eye(2) / 2) == pytest.approx(0.5, abs=1e-10)


def test_fidelity_is_symmetric(rng):
    for _ in range(10):
        a = random_density(rng, 2)
        b = random_density(rng, 2)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-10)


def test_fidelity_grows_with_the_real_coherence():
    plus = 0.5 * np.ones((2, 2), dtype=complex)
    lams = np.linspace(-1.0, 1.0, 21)
    fids = []
    for lam in lams:
        rho = np.array([[0.5, lam / 2], [lam / 2, 0.5]], dtype=complex)
        f = fidelity(rho, plus)
        assert f == pytest.approx((1 + lam) / 2, abs=1e-10)
        fids.append(f)
    assert np.all(np.diff(fids) > 0)


def test_fidelity_validates_inputs(rng):
    with pytest.raises(DomainError):
        fidelity(np.eye(2) / 2, np.eye(4) / 4)
    with pytest.raises(DomainError):
        fidelity(np.array([[0.6, 0.3], [0.0, 0.4]]), np.eye(2) / 2)


# ------------------------------------------------------------- concurrence


def test_bell_state_concurrence_is_one():
    for label in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        assert concurrence_wootters(bell_density(label)) == pytest.approx(
            1.0, abs=1e-9
        )


def test_dephased_mixture_has_no_concurrence():
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = 0.5  # equal HV / VH populations, no coherence
    assert concurrence_wootters(rho) == pytest.approx(0.0, abs=1e-12)
    assert chsh_max(rho) == pytest.approx(2.0, abs=1e-9)


def test_partially_coherent_pair_concurrence_equals_the_coherence():
    lam = 0.37
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = 0.5
    rho[1, 2] = rho[2, 1] = lam / 2
    assert concurrence_wootters(rho) == pytest.approx(lam, abs=1e-8)
    assert purity(rho) == pytest.approx((1 + lam**2) / 2, abs=1e-10)


def test_pair_concurrence_tracks_the_coherence_integral(rng):
    # the reduced pair state keeps C = |Lambda| for the anticorrelated family
    for _ in range(15):
        jsa = small_jsa(n_points=32, fwhm_a_nm=rng.uniform(1.0, 3.0))
        phase_a = linear_phase(jsa.grid_a, rng.uniform(-150.0, 150.0))
        elem = BirefringentElement(rng.uniform(0.0, 120.0))
        pair = auxiliary_state(jsa, phase_a, None)
        pair = apply_element(pair, 1, elem)
        rho = reduce_polarization(pair, (0, 1))
        lam = decoherence_function(jsa, phase_a=phase_a, elem_b=elem)
        assert concurrence_wootters(rho) == pytest.approx(abs(lam), abs=1e-8)


# ------------------------------------------------------ pure bipartitions


def oracle_photon_cut_purity(state, kept):
    """tr sigma_A^2 from the dense state vector, side A = one photon."""
    psi = dense_state_vector(state)  # (pol0, pol1, f_a, f_b)
    axis_kept = 2 + state.env_axis[kept]
    axis_other = 2 + state.env_axis[1 - kept]
    m = np.transpose(psi, (kept, axis_kept, 1 - kept, axis_other))
    m = m.reshape(m.shape[0] * m.shape[1], -1)
    k = m.conj().T @ m
    return float(np.sum(np.abs(k) ** 2))


def test_product_state_has_no_cut_entanglement():
    jsa = small_jsa(n_points=24)
    state = prepare_pair(jsa, None, None, ("HH", "HV"), (1.0, 1.0))
    assert concurrence_pure_bipartition(state, (0,)) == pytest.approx(0.0, abs=1e-6)
    assert concurrence_pure_bipartition(state, "polarization") == pytest.approx(
        0.0, abs=1e-6
    )


def test_fully_dephased_pair_is_maximally_cut_entangled():
    pair = small_pair(n_points=48)
    pair = apply_element(pair, 0, BirefringentElement(2000.0))
    assert concurrence_pure_bipartition(pair, (0,)) == pytest.approx(1.0, abs=1e-6)


def test_cut_concurrence_matches_the_dense_oracle():
    jsa = small_jsa(n_points=9)
    pair = auxiliary_state(
        jsa, linear_phase(jsa.grid_a, 60.0), linear_phase(jsa.grid_b, 20.0)
    )
    pair = apply_element(pair, 0, BirefringentElement(50.0))
    for kept in (0, 1):
        want_p = oracle_photon_cut_purity(pair, kept)
        got = concurrence_pure_bipartition(pair, (kept,))
        assert got == pytest.approx(
            np.sqrt(max(0.0, 2.0 * (1.0 - want_p))), abs=1e-12
        )


def test_cut_concurrence_is_invariant_under_local_dephasing():
    pair = small_pair(n_points=32, slope_a=80.0)
    before = concurrence_pure_bipartition(pair, (0,))
    after = concurrence_pure_bipartition(
        apply_element(pair, 0, BirefringentElement(75.0)), (0,)
    )
    assert after == pytest.approx(before, abs=1e-10)


def test_both_sides_of_a_pure_cut_agree():
    pair = small_pair(n_points=32, slope_a=40.0, slope_b=15.0)
    pair = apply_element(pair, 1, BirefringentElement(66.0))
    c0 = concurrence_pure_bipartition(pair, (0,))
    c1 = concurrence_pure_bipartition(pair, (1,))
    assert c0 == pytest.approx(c1, abs=1e-9)


def test_cut_validation():
    pair = small_pair(n_points=8)
    with pytest.raises(DomainError):
        concurrence_pure_bipartition(pair, (0, 1))


# ------------------------------------------------------------------ CHSH


def _chsh_pairwise_max(tb):
    s = np.linalg.norm(tb[:, None, :] + tb[None, :, :], axis=-1)
    d = np.linalg.norm(tb[:, None, :] - tb[None, :, :], axis=-1)
    total = s + d
    idx = np.unravel_index(np.argmax(total), total.shape)
    return float(total[idx]), idx


def _sphere(thetas, phis):
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    return np.stack(
        [np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], axis=-1
    ).reshape(-1, 3), t.ravel(), p.ravel()


def chsh_grid_oracle(rho):
    """Best CHSH value by direct search over the two measurement directions.

    For fixed directions b, b' the optimal remaining settings give
    |T(b+b')| + |T(b-b')|, so only a 4-angle landscape has to be searched:
    a coarse pass over the sphere followed by local refinement.
    """
    t = correlation_matrix(rho)
    vecs, th, ph = _sphere(np.linspace(0, np.pi, 25), np.linspace(0, 2 * np.pi, 49))
    tb = vecs @ t.T
    best, (i, j) = _chsh_pairwise_max(tb)
    angles = [th[i], ph[i], th[j], ph[j]]

    delta = np.pi / 24
    for _ in range(6):
        g1, t1, p1 = _sphere(
            np.linspace(angles[0] - delta, angles[0] + delta, 9),
            np.linspace(angles[1] - delta, angles[1] + delta, 9),
        )
        g2, t2, p2 = _sphere(
            np.linspace(angles[2] - delta, angles[2] + delta, 9),
            np.linspace(angles[3] - delta, angles[3] + delta, 9),
        )
        tb1 = g1 @ t.T
        tb2 = g2 @ t.T
        s = np.linalg.norm(tb1[:, None, :] + tb2[None, :, :], axis=-1)
        d = np.linalg.norm(tb1[:, None, :] - tb2[None, :, :], axis=-1)
        total = s + d
        i, j = np.unravel_index(np.argmax(total), total.shape)
        best = max(best, float(total[i, j]))
        angles = [t1[i], p1[i], t2[j], p2[j]]
        delta /= 3.0
    return best


def test_chsh_maximum_for_bell_states():
    for label in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        assert chsh_max(bell_density(label)) == pytest.approx(
            2.0 * np.sqrt(2.0), abs=1e-9
        )


def test_chsh_agrees_with_the_direct_search(rng):
    for _ in range(50):
        rho = random_density(rng, 4)
        closed = chsh_max(rho)
        searched = chsh_grid_oracle(rho)
        assert searched <= closed + 1e-9  # search cannot beat the closed form
        assert closed - searched < 1e-3


def test_separable_states_stay_below_the_classical_bound(rng):
    for _ in range(20):
        terms = []
        probs = rng.dirichlet(np.ones(4))
        for p in probs:
            terms.append(p * np.kron(random_density(rng, 2), random_density(rng, 2)))
        rho = np.sum(terms, axis=0)
        assert chsh_max(rho) <= 2.0 + 1e-9


def test_chsh_needs_a_two_qubit_state():
    with pytest.raises(DomainError):
        chsh_max(np.eye(2) / 2)
    with pytest.raises(DomainError):
        correlation_matrix(np.eye(8) / 8)


# ----------------------------------------------------------------- report


def test_summarize_bundles_the_scalar_metrics():
    rho = bell_density("psi_plus")
    report = summarize(rho, reference=rho)
    assert isinstance(report, MetricReport)
    assert report.fidelity == pytest.approx(1.0, abs=1e-10)
    assert report.purity == pytest.approx(1.0, abs=1e-10)
    assert report.concurrence == pytest.approx(1.0, abs=1e-9)
    assert report.chsh == pytest.approx(2.0 * np.sqrt(2.0), abs=1e-9)
    as_dict = report.as_dict()
    assert set(as_dict) == {"fidelity", "purity", "concurrence", "chsh"}

    single = summarize(np.eye(2) / 2)
    assert single.fidelity is None
    assert single.concurrence is None
    assert single.chsh is None
    assert single.purity == pytest.approx(0.5, abs=1e-12)
