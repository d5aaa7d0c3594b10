"""Shared fixtures and small builders for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from telesim.optics import linear_phase
from telesim.spectra import (
    GaussianMixtureSpec,
    gaussian_mixture_amplitude,
    grid_for_spectrum,
    product_jsa,
)
from telesim.states import auxiliary_state


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


@pytest.fixture
def spectra_pair():
    return (
        GaussianMixtureSpec.single_nm(780.0, 2.0),
        GaussianMixtureSpec.single_nm(780.0, 3.0),
    )


def small_jsa(n_points=48, fwhm_a_nm=2.0, fwhm_b_nm=3.0):
    """Product two-photon amplitude on coarse grids, cheap enough for loops."""
    spec_a = GaussianMixtureSpec.single_nm(780.0, fwhm_a_nm)
    spec_b = GaussianMixtureSpec.single_nm(780.0, fwhm_b_nm)
    grid_a = grid_for_spectrum(spec_a, n_points=n_points)
    grid_b = grid_for_spectrum(spec_b, n_points=n_points)
    amp_a = gaussian_mixture_amplitude(spec_a, grid_a)
    amp_b = gaussian_mixture_amplitude(spec_b, grid_b)
    return product_jsa(amp_a, amp_b)


@pytest.fixture
def jsa_small():
    return small_jsa()


def small_pair(n_points=48, slope_a=0.0, slope_b=0.0):
    """Auxiliary pair state with optional programmed slopes on each side."""
    jsa = small_jsa(n_points=n_points)
    phase_a = linear_phase(jsa.grid_a, slope_a) if slope_a else None
    phase_b = linear_phase(jsa.grid_b, slope_b) if slope_b else None
    return auxiliary_state(jsa, phase_a, phase_b)


def random_qubit(rng):
    """Haar-ish random pure polarization qubit."""
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = v / np.linalg.norm(v)
    from telesim.protocol import InputQubit

    return InputQubit(v[0], v[1])


def random_density(rng, dim):
    """Random full-rank density matrix from a Ginibre draw."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real
