import math

import numpy as np
import pytest

from kkatom.potential import (E2, ModelConfig, fourier_coeff, fourier_kmax,
                              normalize_angle, potential_closed,
                              potential_fourier_sum, potential_image_sum)

CFG_QUARTER = ModelConfig(R=0.25)


class TestModelConfig:
    def test_radius_positive(self):
        with pytest.raises(ValueError):
            ModelConfig(R=0.0)
        with pytest.raises(ValueError):
            ModelConfig(R=-0.1)

    def test_charge_relation(self):
        # e4^2 = 2 R e^2
        assert ModelConfig(R=0.25).e4_squared == pytest.approx(1.0)


class TestNormalizeAngle:
    def test_range(self):
        assert normalize_angle(math.pi) == pytest.approx(math.pi)
        assert normalize_angle(-math.pi) == pytest.approx(math.pi)
        assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
        assert normalize_angle(2 * math.pi + 0.3) == pytest.approx(0.3)


class TestImageSum:
    def test_single_image(self):
        # n_max = 0 keeps only the source term -e4^2/r^2
        assert potential_image_sum(1.0, 0.0, CFG_QUARTER, 0) == pytest.approx(-1.0, rel=1e-14)

    @pytest.mark.parametrize("r,theta", [(0.7, 0.9), (2.0, 2.5), (0.05, 3.0)])
    def test_even_in_theta(self, r, theta):
        assert potential_image_sum(r, theta, CFG_QUARTER, 50) == pytest.approx(
            potential_image_sum(r, -theta, CFG_QUARTER, 50), rel=1e-15)

    def test_truncated_sum_against_closed_form(self):
        # plain partial sum converges like 1/n_max: certified ~1e-4 here;
        # with the integral tail correction it reaches the closed form to 1e-6
        vc = potential_closed(2.0, math.pi / 3, CFG_QUARTER)
        plain = potential_image_sum(2.0, math.pi / 3, CFG_QUARTER, 10**4)
        assert abs(plain - vc) / abs(vc) < 2e-4
        corrected = potential_image_sum(2.0, math.pi / 3, CFG_QUARTER, 10**4, tail=True)
        assert abs(corrected - vc) / abs(vc) < 1e-6

    def test_source_point_rejected(self):
        with pytest.raises(ValueError):
            potential_image_sum(0.0, 0.0, CFG_QUARTER, 10)

    def test_on_circle_away_from_charge(self):
        # r = 0, theta != 0 is regular: sum over image distances R|theta - 2 pi n|
        v = potential_image_sum(0.0, 2.0, CFG_QUARTER, 10**4, tail=True)
        limit = -E2 / (2.0 * CFG_QUARTER.R * math.sin(1.0) ** 2)
        assert v == pytest.approx(limit, rel=1e-9)


class TestClosedForm:
    @pytest.mark.parametrize("r", [0.05, 0.3, 1.0, 4.0])
    def test_antipodal_hyperbolic_identity(self, r):
        # sinh x / (cosh x + 1) = tanh(x/2)
        expected = -(E2 / r) * math.tanh(r / (2 * CFG_QUARTER.R))
        assert potential_closed(r, math.pi, CFG_QUARTER) == pytest.approx(expected, rel=1e-13)

    def test_long_range_coulomb(self):
        for r in (3.0, 6.0, 10.0):
            ratio = potential_closed(r, 1.0, CFG_QUARTER) / (-E2 / r)
            assert ratio == pytest.approx(1.0, abs=3 * math.exp(-r / CFG_QUARTER.R))

    def test_short_range_four_dimensional(self):
        # r^2 V -> -2 R e^2 along theta = 0 (dominant image term)
        r = 1e-6
        assert r**2 * potential_closed(r, 0.0, CFG_QUARTER) == pytest.approx(
            -2 * CFG_QUARTER.R * E2, rel=1e-8)

    def test_matches_image_sum(self):
        for r, theta in [(0.5, 0.3), (2.0, math.pi / 3), (0.02, 2.0)]:
            vi = potential_image_sum(r, theta, CFG_QUARTER, 10**4, tail=True)
            assert potential_closed(r, theta, CFG_QUARTER) == pytest.approx(vi, rel=1e-9)

    def test_periodicity(self):
        for r, theta in [(0.5, 0.4), (1.5, -2.0)]:
            assert potential_closed(r, theta, CFG_QUARTER) == pytest.approx(
                potential_closed(r, theta + 2 * math.pi, CFG_QUARTER), rel=1e-15)

    def test_monotonic_in_theta(self):
        thetas = np.linspace(0.05, math.pi, 50)
        for r in (0.1, 1.0):
            vals = potential_closed(np.full_like(thetas, r), thetas, CFG_QUARTER)
            assert np.all(np.diff(vals) > 0)  # least negative at theta = pi

    def test_source_point_rejected(self):
        with pytest.raises(ValueError):
            potential_closed(0.0, 0.0, CFG_QUARTER)

    def test_no_overflow_far_out(self):
        # r/R ~ 2000 must not overflow the hyperbolic functions
        v = potential_closed(40.0, 1.0, ModelConfig(R=0.02))
        assert v == pytest.approx(-E2 / 40.0, rel=1e-12)


class TestFourier:
    def test_zero_mode(self):
        assert fourier_coeff(0, 1.0, CFG_QUARTER) == pytest.approx(-2.0)

    def test_first_mode(self):
        assert fourier_coeff(1, 1.0, CFG_QUARTER) == pytest.approx(-2.0 * math.exp(-4.0),
                                                                   rel=1e-14)

    def test_even_in_mode_number(self):
        for k in (1, 3, 10):
            assert fourier_coeff(k, 0.7, CFG_QUARTER) == fourier_coeff(-k, 0.7, CFG_QUARTER)

    def test_r_zero_rejected(self):
        with pytest.raises(ValueError):
            fourier_coeff(2, 0.0, CFG_QUARTER)
        with pytest.raises(ValueError):
            potential_fourier_sum(0.0, 1.0, CFG_QUARTER, 10)

    def test_kmax_zero_is_coulomb(self):
        assert potential_fourier_sum(0.8, 2.1, CFG_QUARTER, 0) == pytest.approx(-E2 / 0.8)

    def test_series_converges_to_closed_form(self):
        cfg = ModelConfig(R=0.2)
        vc = potential_closed(1.0, 1.0, cfg)
        assert potential_fourier_sum(1.0, 1.0, cfg, 200) == pytest.approx(vc, abs=1e-12)

    def test_small_radius_point(self):
        vc = potential_closed(0.05, 2.0, CFG_QUARTER)
        kmax = fourier_kmax(0.05, CFG_QUARTER)
        assert potential_fourier_sum(0.05, 2.0, CFG_QUARTER, kmax) == pytest.approx(
            vc, rel=1e-6)

    def test_periodicity(self):
        assert potential_fourier_sum(0.5, 0.9, CFG_QUARTER, 60) == pytest.approx(
            potential_fourier_sum(0.5, 0.9 + 2 * math.pi, CFG_QUARTER, 60), rel=1e-15)


class TestThreeFormAgreement:
    @pytest.mark.parametrize("R", [0.1, 0.25])
    def test_sample_grid(self, R):
        cfg = ModelConfig(R=R)
        for r in np.geomspace(0.05 * R, 10 * R, 6):
            kmax = fourier_kmax(r, cfg)
            for theta in (-2.5, -0.9, 0.4, 1.7, math.pi):
                vc = potential_closed(r, theta, cfg)
                vi = potential_image_sum(r, theta, cfg, 10**4, tail=True)
                vf = potential_fourier_sum(r, theta, cfg, kmax)
                assert abs(vi - vc) <= 1e-6 * abs(vc)
                assert abs(vf - vc) <= 1e-6 * abs(vc)

    def test_long_range_invariant(self):
        cfg = ModelConfig(R=0.1)
        for r in (0.6, 1.0, 2.5):
            for theta in (0.0, 1.0, math.pi):
                v = potential_closed(r, theta, cfg)
                assert abs(v * r / E2 + 1.0) < 3.0 * math.exp(-r / cfg.R)
