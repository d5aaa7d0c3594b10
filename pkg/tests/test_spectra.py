"""Frequency grids, Gaussian mixture spectra and joint amplitudes."""

import numpy as np
import pytest
from scipy.integrate import quad

from telesim.errors import DomainError
from telesim.spectra import (
    FrequencyGrid,
    GaussianComponent,
    GaussianMixtureSpec,
    TruncationWarning,
    gaussian_mixture_amplitude,
    grid_for_spectrum,
    make_uniform_grid,
    marginal,
    product_jsa,
)


def test_uniform_grid_points_and_weights():
    grid = make_uniform_grid(100.0, 10.0, 11)
    assert np.array_equal(grid.points, np.arange(95.0, 106.0))
    assert np.array_equal(grid.weights, np.ones(11))
    assert grid.n_points == 11
    assert grid.center == pytest.approx(100.0)
    assert grid.span == pytest.approx(10.0)


def test_uniform_grid_rejects_degenerate_span():
    with pytest.raises(DomainError):
        make_uniform_grid(100.0, 0.0, 11)
    with pytest.raises(DomainError):
        make_uniform_grid(100.0, -5.0, 11)


def test_grid_same_as_detects_matching_axes():
    g1 = make_uniform_grid(100.0, 10.0, 11)
    g2 = make_uniform_grid(100.0, 10.0, 11)
    g3 = make_uniform_grid(100.0, 10.0, 12)
    assert g1.same_as(g2)
    assert not g1.same_as(g3)


def test_fwhm_conversion_at_780nm():
    comp = GaussianComponent.from_nm(1.0, 780.0, 2.0)
    # frozen: c * 2nm / (780nm)^2 / (2 sqrt(2 ln 2))
    assert comp.center_hz == pytest.approx(384349305128205.1, abs=1.0)
    assert comp.sigma_hz == pytest.approx(418508004834.53375, abs=1e-3)
    comp_b = GaussianComponent.from_nm(1.0, 780.0, 3.0)
    assert comp_b.sigma_hz == pytest.approx(627762007251.8005, abs=1e-3)


def test_component_rejects_bad_parameters():
    with pytest.raises(DomainError):
        GaussianComponent(0.0, 1e14, 1e11)
    with pytest.raises(DomainError):
        GaussianComponent(1.0, 1e14, 0.0)
    with pytest.raises(DomainError):
        GaussianMixtureSpec(())


def test_mixture_norm_against_adaptive_quadrature():
    spectrum = GaussianMixtureSpec(
        (
            GaussianComponent(0.5, 3.80e14, 2.5e11),
            GaussianComponent(0.3, 3.83e14, 4.0e11),
            GaussianComponent(0.2, 3.86e14, 1.5e11),
        )
    )
    grid = grid_for_spectrum(spectrum, n_points=2048, n_sigmas=7.0)
    grid_total = float(np.sum(grid.weights * spectrum.density(grid.points)))
    lo, hi = spectrum.support(9.0)
    quad_total, _ = quad(lambda f: spectrum.density(np.asarray(f)), lo, hi, limit=200)
    assert grid_total == pytest.approx(quad_total, abs=1e-6)
    assert quad_total == pytest.approx(1.0, abs=1e-6)


def test_grid_for_spectrum_covers_requested_sigmas():
    spectrum = GaussianMixtureSpec.single_nm(780.0, 2.0)
    sigma = spectrum.components[0].sigma_hz
    center = spectrum.components[0].center_hz
    grid = grid_for_spectrum(spectrum, n_points=257, n_sigmas=4.0)
    assert grid.points[0] == pytest.approx(center - 4 * sigma, rel=1e-12)
    assert grid.points[-1] == pytest.approx(center + 4 * sigma, rel=1e-12)


def test_amplitude_is_unit_norm_on_its_grid():
    spectrum = GaussianMixtureSpec.single_nm(780.0, 2.0)
    grid = grid_for_spectrum(spectrum, n_points=301)
    amp = gaussian_mixture_amplitude(spectrum, grid)
    norm2 = float(np.sum(grid.weights * amp.density()))
    assert norm2 == pytest.approx(1.0, abs=1e-12)


def test_narrow_grid_warns_about_truncation():
    spectrum = GaussianMixtureSpec.single_nm(780.0, 2.0)
    sigma = spectrum.components[0].sigma_hz
    center = spectrum.components[0].center_hz
    narrow = make_uniform_grid(center, 4 * sigma, 64)  # only +-2 sigma
    with pytest.warns(TruncationWarning):
        amp = gaussian_mixture_amplitude(spectrum, narrow)
    # renormalization still makes it a valid amplitude
    assert float(np.sum(narrow.weights * amp.density())) == pytest.approx(1.0, abs=1e-12)

    wide = make_uniform_grid(center, 8 * sigma, 64)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        gaussian_mixture_amplitude(spectrum, wide)


def test_product_marginals_round_trip():
    spec_a = GaussianMixtureSpec.single_nm(780.0, 2.0)
    spec_b = GaussianMixtureSpec.single_nm(780.0, 3.0)
    grid_a = grid_for_spectrum(spec_a, n_points=97)
    grid_b = grid_for_spectrum(spec_b, n_points=81)
    amp_a = gaussian_mixture_amplitude(spec_a, grid_a)
    amp_b = gaussian_mixture_amplitude(spec_b, grid_b)
    jsa = product_jsa(amp_a, amp_b)

    assert jsa.is_product
    np.testing.assert_allclose(marginal(jsa, "a"), amp_a.density(), atol=1e-10)
    np.testing.assert_allclose(marginal(jsa, "b"), amp_b.density(), atol=1e-10)
    assert float(np.sum(grid_a.weights * marginal(jsa, "a"))) == pytest.approx(
        1.0, abs=1e-10
    )
    assert float(np.sum(grid_b.weights * marginal(jsa, "b"))) == pytest.approx(
        1.0, abs=1e-10
    )
    with pytest.raises(DomainError):
        marginal(jsa, "c")


def test_joint_amplitude_validates_shape_and_norm():
    spectrum = GaussianMixtureSpec.single_nm(780.0, 2.0)
    grid = grid_for_spectrum(spectrum, n_points=33)
    amp = gaussian_mixture_amplitude(spectrum, grid)
    from telesim.spectra import JointSpectralAmplitude

    with pytest.raises(DomainError):
        JointSpectralAmplitude(grid, grid, np.outer(amp.values, amp.values[:-1]))
    with pytest.raises(DomainError):
        JointSpectralAmplitude(grid, grid, 3.0 * np.outer(amp.values, amp.values))


def test_grid_validation_rejects_bad_weights():
    pts = np.linspace(0.0, 1.0, 5)
    with pytest.raises(DomainError):
        FrequencyGrid(pts, np.ones(4))
    with pytest.raises(DomainError):
        FrequencyGrid(pts[::-1].copy(), np.ones(5))
