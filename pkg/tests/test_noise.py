import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from nfringe import (
    AtomChain,
    CapExceededError,
    FitError,
    NoiseSpec,
    ScanGrid,
    analytic_contrast,
    closed_form,
    fit_visibility,
    fringe_multiplier,
    jittered_scan,
    magic_config,
    propagate_sigma,
)
from nfringe.noise import NOISE_SCAN_RANGE

from oracles import jitter_mean_curve

from test_geometry import REF


class TestNoiseSpec:
    def test_defaults(self):
        spec = NoiseSpec(0.5)
        assert spec.n_samples == 10_000
        assert spec.seed == 0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"sigma": -0.1},
            {"sigma": 0.5, "n_samples": 0},
            {"sigma": 0.5, "seed": -1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            NoiseSpec(**kwargs)


class TestAnalyticContrast:
    def test_values(self):
        assert analytic_contrast(2, 0.0) == 1.0
        assert_allclose(analytic_contrast(4, 1.0), math.exp(-1.0), rtol=1e-15)
        assert_allclose(analytic_contrast(2, 1.0), math.exp(-0.5), rtol=1e-15)

    def test_monotone(self):
        sigmas = np.linspace(0.0, 2.0, 9)
        values = [analytic_contrast(4, s) for s in sigmas]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert analytic_contrast(6, 0.5) < analytic_contrast(2, 0.5)


class TestJitteredScan:
    def test_zero_sigma_equals_noiseless_fringe(self):
        chain = AtomChain(4, 0.5)
        grid = jittered_scan(chain, NoiseSpec(0.0, n_samples=10), grid_points=101)
        assert_allclose(grid.values, closed_form(magic_config(4), grid.axis1), atol=1e-12)

    def test_grid_layout(self):
        grid = jittered_scan(AtomChain(2, 0.5), NoiseSpec(0.3, n_samples=100), grid_points=51)
        assert grid.axis1.size == 51
        assert grid.axis1[0] == pytest.approx(NOISE_SCAN_RANGE[0])
        assert grid.axis1[-1] == pytest.approx(NOISE_SCAN_RANGE[1])
        assert grid.metadata["sigma"] == "0.3"

    def test_deterministic_for_fixed_seed(self):
        chain = AtomChain(3, 0.5)
        spec = NoiseSpec(0.4, n_samples=500, seed=42)
        a = jittered_scan(chain, spec, grid_points=41)
        b = jittered_scan(chain, spec, grid_points=41)
        assert np.array_equal(a.values, b.values)

    def test_seed_changes_the_draw(self):
        chain = AtomChain(3, 0.5)
        a = jittered_scan(chain, NoiseSpec(0.4, n_samples=500, seed=1), grid_points=41)
        b = jittered_scan(chain, NoiseSpec(0.4, n_samples=500, seed=2), grid_points=41)
        assert not np.array_equal(a.values, b.values)

    @pytest.mark.parametrize("n,sigma", [(2, 0.5), (3, 0.6), (4, 0.5)])
    def test_matches_exact_expectation(self, n, sigma):
        # Independent closed-form average over the Gaussian jitter:
        # the Monte Carlo curve must agree within sampling error.
        chain = AtomChain(n, 0.5)
        grid = jittered_scan(chain, NoiseSpec(sigma, n_samples=20_000, seed=7), grid_points=101)
        exact = jitter_mean_curve(n, sigma, grid.axis1)
        assert np.abs(grid.values - exact).max() < 0.02
        m = fringe_multiplier(n)
        mc_fit = fit_visibility(grid, m)
        oracle_fit = fit_visibility(ScanGrid(axis1=grid.axis1, values=exact), m)
        assert abs(mc_fit.visibility - oracle_fit.visibility) < 5.0 * mc_fit.standard_error

    def test_two_atom_contrast_follows_analytic_law(self):
        # With a single jittered detector the exponential damping law is
        # exact, so the fit must land within a few standard errors.
        sigma = 0.5
        grid = jittered_scan(AtomChain(2, 0.5), NoiseSpec(sigma, n_samples=10_000, seed=3))
        est = fit_visibility(grid, 2)
        assert abs(est.visibility - analytic_contrast(2, sigma)) < 3.0 * est.standard_error

    def test_half_contrast_sigma(self):
        # Contrast 0.5 at sigma = sqrt(2 ln 2) for two atoms.
        sigma = math.sqrt(2.0 * math.log(2.0))
        grid = jittered_scan(AtomChain(2, 0.5), NoiseSpec(sigma, n_samples=10_000, seed=5))
        est = fit_visibility(grid, 2)
        assert est.visibility == pytest.approx(0.5, abs=4.0 * est.standard_error)

    def test_visibility_nonincreasing_in_sigma(self):
        chain = AtomChain(2, 0.5)
        fits = []
        for sigma in (0.0, 0.4, 0.9):
            grid = jittered_scan(chain, NoiseSpec(sigma, n_samples=2_000, seed=9), grid_points=101)
            fits.append(fit_visibility(grid, 2))
        for lo, hi in zip(fits[1:], fits):
            slack = 3.0 * (lo.standard_error + hi.standard_error)
            assert lo.visibility <= hi.visibility + slack

    def test_validation(self):
        with pytest.raises(ValueError):
            jittered_scan(AtomChain(1, 0.5), NoiseSpec(0.1, n_samples=10))
        with pytest.raises(CapExceededError):
            jittered_scan(AtomChain(31, 0.5), NoiseSpec(0.1, n_samples=10))


class TestFitVisibility:
    def test_recovers_exact_fringe(self):
        x = np.linspace(-2.0 * math.pi, 2.0 * math.pi, 201)
        grid = ScanGrid(axis1=x, values=0.5 * (1.0 + np.cos(2.0 * x)))
        est = fit_visibility(grid, 2)
        assert est.visibility == pytest.approx(1.0, abs=1e-9)
        assert est.offset == pytest.approx(0.5, abs=1e-9)
        assert abs(est.phase_shift) < 1e-6
        assert est.rms_residual < 1e-9

    def test_flat_data_has_zero_visibility(self):
        x = np.linspace(-math.pi, math.pi, 101)
        est = fit_visibility(ScanGrid(axis1=x, values=np.full(101, 0.7)), 2)
        assert est.visibility < 1e-9

    def test_recovers_known_amplitude_under_noise(self):
        rng = np.random.default_rng(17)
        x = np.linspace(-math.pi, math.pi, 301)
        y = 1.0 + 0.3 * np.cos(4.0 * x - 0.2) + rng.normal(0.0, 0.05, x.size)
        est = fit_visibility(ScanGrid(axis1=x, values=np.clip(y, 0.0, None)), 4)
        assert est.visibility == pytest.approx(0.3, abs=4.0 * est.standard_error)
        assert est.phase_shift == pytest.approx(0.2, abs=0.05)

    def test_zero_signal_raises(self):
        x = np.linspace(-math.pi, math.pi, 101)
        with pytest.raises(FitError):
            fit_visibility(ScanGrid(axis1=x, values=np.zeros(101)), 2)

    def test_grid_preconditions(self):
        x = np.linspace(-math.pi / 2, math.pi / 2, 101)  # one period at m = 2
        grid = ScanGrid(axis1=x, values=np.ones(101))
        with pytest.raises(ValueError):
            fit_visibility(grid, 2)
        x = np.linspace(-2.0 * math.pi, 2.0 * math.pi, 5)  # too few points
        with pytest.raises(ValueError):
            fit_visibility(ScanGrid(axis1=x, values=np.ones(5)), 2)
        with pytest.raises(ValueError):
            fit_visibility(ScanGrid(axis1=np.linspace(-7, 7, 101), values=np.ones(101)), 0)


class TestPropagateSigma:
    def test_reference_value(self):
        assert_allclose(propagate_sigma(REF), 0.3971596107116297, atol=1e-12)

    def test_zero_uncertainties_give_zero(self):
        from nfringe import FeasibilityParams

        params = FeasibilityParams(
            detector_size=1e-3,
            theta=0.5,
            delta_theta=0.0,
            delta_d=0.0,
            delta_k_rel=0.0,
            spacing=5e-6,
            wavelength=800e-9,
        )
        assert propagate_sigma(params) == 0.0

    def test_spacing_error_term_alone(self):
        from nfringe import FeasibilityParams

        params = FeasibilityParams(
            detector_size=1e-3,
            theta=math.pi / 2,
            delta_theta=0.0,
            delta_d=0.1e-6,
            delta_k_rel=0.0,
            spacing=5e-6,
            wavelength=800e-9,
        )
        k = 2.0 * math.pi / 800e-9
        assert_allclose(propagate_sigma(params), k * 0.1e-6, rtol=1e-12)
