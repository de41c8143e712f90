import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from nfringe import (
    AtomChain,
    MagicConfig,
    closed_form,
    derive_amplitude,
    fringe_multiplier,
    g_n,
    magic_config,
    magic_config_even,
    magic_config_odd,
    magic_phase_matrix,
    verify_collapse,
)

# Peak-to-mean amplitudes of the collapsed fringe, frozen from an
# independent permutation-sum evaluation at delta1 = 0 (G = 2 A_N there).
FROZEN_AMPLITUDE = {
    2: 0.5,
    3: 0.07407407407407407,
    4: 0.125,
    5: 0.02304000000000004,
    6: 0.05555555555555554,
    7: 0.012589506558856064,
    8: 0.03955078125000005,
}


class TestFringeMultiplier:
    @pytest.mark.parametrize("n,m", [(2, 2), (3, 4), (4, 4), (5, 6), (6, 6), (7, 8), (8, 8)])
    def test_values(self, n, m):
        assert fringe_multiplier(n) == m

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            fringe_multiplier(1)


class TestPlacements:
    def test_even_examples(self):
        assert_allclose(magic_config_even(2, 0.4), [0.4, -0.4], atol=1e-15)
        assert_allclose(
            magic_config_even(4, 0.0), [0.0, 0.0, math.pi / 2, -math.pi / 2], atol=1e-15
        )
        assert_allclose(
            magic_config_even(6, 0.3),
            [0.3, -0.3, math.pi / 3, -math.pi / 3, math.pi / 3, -math.pi / 3],
            atol=1e-15,
        )

    def test_odd_examples(self):
        assert_allclose(magic_config_odd(3, 0.4), [0.4, -0.4, math.pi / 2], atol=1e-15)
        assert_allclose(
            magic_config_odd(5, 0.0),
            [0.0, 0.0, math.pi / 3, -math.pi / 3, math.pi / 3],
            atol=1e-15,
        )
        assert_allclose(magic_config_odd(3, math.pi), [math.pi, -math.pi, math.pi / 2], atol=1e-15)

    def test_parity_is_enforced(self):
        with pytest.raises(ValueError):
            magic_config_even(3, 0.0)
        with pytest.raises(ValueError):
            magic_config_odd(4, 0.0)
        with pytest.raises(ValueError):
            magic_config_odd(1, 0.0)

    def test_phase_matrix_stacks_rows(self):
        delta1 = np.array([-0.5, 0.0, 1.2])
        mat = magic_phase_matrix(5, delta1)
        assert mat.shape == (3, 5)
        for k, d in enumerate(delta1):
            assert_allclose(mat[k], magic_config_odd(5, d), atol=1e-15)


class TestAmplitude:
    @pytest.mark.parametrize("n", sorted(FROZEN_AMPLITUDE))
    def test_frozen_values(self, n):
        assert derive_amplitude(n) == pytest.approx(FROZEN_AMPLITUDE[n], abs=1e-12)

    def test_even_closed_form_1_over_n_halves(self):
        # For even N the amplitude is (1/2)^(N/2) ... no closed form is
        # assumed here; just check the N=2 and N=4 anchor values.
        assert derive_amplitude(2) == pytest.approx(0.5, abs=1e-15)
        assert derive_amplitude(4) == pytest.approx(0.125, abs=1e-12)


class TestMagicConfig:
    def test_fields(self):
        cfg = magic_config(5)
        assert isinstance(cfg, MagicConfig)
        assert cfg.n == 5
        assert cfg.parity == "odd"
        assert cfg.fringe_multiplier == 6
        assert cfg.amplitude == pytest.approx(FROZEN_AMPLITUDE[5], abs=1e-12)
        assert_allclose(cfg.phases(0.7), magic_config_odd(5, 0.7), atol=1e-15)

    def test_closed_form_examples(self):
        assert closed_form(magic_config(2), 0.0) == pytest.approx(1.0, abs=1e-14)
        assert abs(closed_form(magic_config(4), math.pi / 4)) < 1e-15
        assert closed_form(magic_config(3), 0.0) == pytest.approx(
            2.0 * FROZEN_AMPLITUDE[3], abs=1e-12
        )

    def test_closed_form_array(self):
        cfg = magic_config(4)
        delta = np.linspace(-1.0, 1.0, 11)
        assert_allclose(
            closed_form(cfg, delta),
            cfg.amplitude * (1.0 + np.cos(4.0 * delta)),
            rtol=1e-14,
        )


class TestCollapse:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_residual_below_contract(self, n):
        assert verify_collapse(n) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_quarter_period_hits_mean_level(self, n):
        cfg = magic_config(n)
        chain = AtomChain(n, 0.5)
        delta_q = math.pi / (2.0 * cfg.fringe_multiplier)
        assert g_n(chain, cfg.phases(delta_q)) == pytest.approx(cfg.amplitude, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_zeros_and_maxima_positions(self, n):
        cfg = magic_config(n)
        chain = AtomChain(n, 0.5)
        m = cfg.fringe_multiplier
        for k in (-1, 0, 1):
            top = g_n(chain, cfg.phases(2.0 * math.pi * k / m))
            assert top == pytest.approx(2.0 * cfg.amplitude, abs=1e-12)
            zero = g_n(chain, cfg.phases((2.0 * k + 1.0) * math.pi / m))
            assert abs(zero) < 1e-12

    def test_full_contrast(self):
        cfg = magic_config(4)
        chain = AtomChain(4, 0.5)
        grid = np.linspace(-math.pi, math.pi, 801)
        from nfringe import g_n_batch

        values = g_n_batch(chain, magic_phase_matrix(4, grid))
        contrast = (values.max() - values.min()) / (values.max() + values.min())
        assert contrast == pytest.approx(1.0, abs=1e-10)

    def test_single_harmonic_spectrum(self):
        # One collapsed period sampled without the endpoint: all spectral
        # power sits in the DC bin and the first harmonic.
        n = 3
        cfg = magic_config(n)
        chain = AtomChain(n, 0.5)
        from nfringe import g_n_batch

        k = 64
        grid = np.linspace(0.0, 2.0 * math.pi / cfg.fringe_multiplier, k, endpoint=False)
        values = g_n_batch(chain, magic_phase_matrix(n, grid))
        power = np.abs(np.fft.rfft(values)) ** 2
        leakage = power[2:].sum() / power.sum()
        assert leakage < 1e-10
