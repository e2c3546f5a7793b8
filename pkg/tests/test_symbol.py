"""Symbol evaluation, auxiliary factor, and structural probes."""

import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wfrac import (
    DomainError,
    FracParams,
    convexity_probe_at_origin,
    eval_h,
    eval_h_derivative,
    eval_phi,
    eval_phi_real,
    low_freq_exponent_estimate,
)

ALPHAS = (0.3, 0.5, 0.7, 0.9)
BETAS = (0.0, 0.25, 0.5, 0.75, 1.0)


class TestFracParams:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2, 1.7])
    def test_alpha_range_enforced(self, alpha):
        with pytest.raises(DomainError):
            FracParams(alpha, 0.5)

    def test_negative_beta_rejected(self):
        with pytest.raises(DomainError):
            FracParams(0.5, -0.1)

    def test_admissibility_flag(self):
        assert FracParams(0.5, 1.0).evolution_admissible
        assert FracParams(0.5, 0.0).evolution_admissible
        assert not FracParams(0.5, 1.5).evolution_admissible


class TestEvalPhi:
    def test_halving_point(self):
        # alpha=0.5, beta=1, s=1: denominator 1 + (1-alpha) = 1.5
        p = FracParams(0.5, 1.0)
        assert_allclose(eval_phi(p, 1.0 + 0j).real, 1.0 / 1.5, rtol=1e-14)

    def test_beta_zero_collapses_to_power(self):
        p = FracParams(0.37, 0.0)
        assert_allclose(eval_phi(p, 4.0 + 0j).real, 4.0**0.37, rtol=1e-14)

    def test_pinned_value(self):
        # mpmath, 50 digits (tests/oracles/pin_values.py)
        p = FracParams(0.3, 0.7)
        assert_allclose(eval_phi_real(p, 0.2), 0.27578125474393047842, rtol=1e-13)

    def test_rejects_origin_and_cut(self):
        p = FracParams(0.5, 1.0)
        with pytest.raises(DomainError):
            eval_phi(p, 0.0)
        with pytest.raises(DomainError):
            eval_phi(p, -2.0 + 0j)

    def test_positive_on_log_grid(self):
        for alpha in ALPHAS:
            for beta in BETAS:
                p = FracParams(alpha, beta)
                for s in np.logspace(-8, 8, 33):
                    v = eval_phi(p, complex(s, 0.0))
                    assert v.imag == 0.0
                    assert v.real > 0.0

    def test_high_frequency_caputo_limit(self):
        # |phi/s^alpha - 1| <= 1e-3 once the correction term
        # beta*(1-alpha)*s^(alpha-1) is small; the probe abscissa follows
        # from that explicit formula (s = 1e6 suffices only for alpha <= 0.5)
        for alpha in ALPHAS:
            for beta in BETAS:
                p = FracParams(alpha, beta)
                s = max(1e6, (max(beta, 0.25) * (1 - alpha) / 5e-4) ** (1 / (1 - alpha)))
                ratio = eval_phi_real(p, s) / s**alpha
                assert abs(ratio - 1.0) <= 1e-3, (alpha, beta, s)

    def test_alpha_to_one_pointwise_monotone(self):
        for beta in (0.0, 0.5, 1.0):
            for s in (0.5, 1.0, 2.0, 10.0):
                gaps = [
                    abs(eval_phi_real(FracParams(a, beta), s) - s)
                    for a in (0.9, 0.99, 0.999)
                ]
                # at beta=0, s=1 the symbol equals s for every alpha: the
                # gaps collapse to zero, so monotonicity is non-strict
                assert gaps[0] >= gaps[1] >= gaps[2]
                if gaps[0] > 0.0:
                    assert gaps[1] < gaps[0] and gaps[2] < gaps[1]
                assert gaps[2] < 0.02 * s

    def test_beta_one_origin_slope(self):
        # phi(s)/s -> 1/(1-alpha); deviation is s^(1-alpha)/(1-alpha), so the
        # probe abscissa is alpha-dependent (1e-8 suffices only for alpha <= 0.6)
        for alpha in ALPHAS:
            p = FracParams(alpha, 1.0)
            s = min(1e-8, ((1 - alpha) * 5e-4) ** (1 / (1 - alpha)))
            assert_allclose(eval_phi_real(p, s) / s, 1.0 / (1 - alpha), rtol=1e-3)

    def test_sectorial_two_regime(self):
        theta = math.pi - 0.3
        for alpha, beta in [(0.3, 0.5), (0.5, 1.0), (0.7, 0.25), (0.9, 1.0)]:
            p = FracParams(alpha, beta)
            for r in (1e-4, 1e-2, 1e2, 1e4):
                q = alpha if r >= 1.0 else alpha + beta * (1 - alpha)
                for sgn in (1.0, -1.0):
                    s = r * cmath.exp(1j * sgn * theta)
                    ratio = abs(eval_phi(p, s)) / r**q
                    assert 1e-2 <= ratio <= 1e2, (alpha, beta, r, sgn)


class TestEvalH:
    def test_halving_point(self):
        assert_allclose(eval_h(FracParams(0.5, 1.0), 1.0), 1.0 / 1.5, rtol=1e-14)

    def test_large_s_limit(self):
        assert abs(eval_h(FracParams(0.5, 0.0), 1e8) - 1.0) < 1e-3

    def test_pinned_value(self):
        # mpmath, 50 digits
        assert_allclose(eval_h(FracParams(0.3, 0.0), 2.0), 0.69886059078279289245, rtol=1e-13)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            eval_h(FracParams(0.5, 0.0), 0.0)
        with pytest.raises(DomainError):
            eval_h(FracParams(0.5, 0.0), -1.0)

    @pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9])
    def test_strictly_increasing_and_in_unit_interval(self, alpha):
        p = FracParams(alpha, 0.0)
        s = np.logspace(-4, 4, 100)
        h = np.array([eval_h(p, x) for x in s])
        assert np.all((h > 0.0) & (h < 1.0))
        assert np.all(np.diff(h) > 0.0)

    @pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9])
    @pytest.mark.parametrize("s", [0.1, 1.0, 10.0])
    def test_derivative_formula_matches_finite_difference(self, alpha, s):
        p = FracParams(alpha, 0.0)
        h = s * 1e-5
        fd = (eval_h(p, s + h) - eval_h(p, s - h)) / (2 * h)
        assert_allclose(eval_h_derivative(p, s), fd, rtol=1e-6)


class TestStructuralProbes:
    def test_low_freq_exponent_beta0(self):
        assert abs(low_freq_exponent_estimate(FracParams(0.5, 0.0)) - 0.5) <= 0.02

    def test_low_freq_exponent_beta1(self):
        assert abs(low_freq_exponent_estimate(FracParams(0.5, 1.0)) - 1.0) <= 0.02

    def test_low_freq_exponent_mixed(self):
        assert abs(low_freq_exponent_estimate(FracParams(0.3, 0.5)) - 0.65) <= 0.02

    def test_low_freq_exponent_full_grid(self):
        for alpha in ALPHAS:
            for beta in BETAS:
                est = low_freq_exponent_estimate(FracParams(alpha, beta))
                assert abs(est - (alpha + beta * (1 - alpha))) <= 0.02

    def test_convexity_positive_beyond_bernstein_range(self):
        assert convexity_probe_at_origin(FracParams(0.5, 2.0), 1e-3) > 0.0
        assert convexity_probe_at_origin(FracParams(0.3, 1.5), 1e-2) > 0.0

    def test_concavity_at_beta_zero(self):
        assert convexity_probe_at_origin(FracParams(0.5, 0.0), 1e-3) < 0.0

    def test_probe_domain_checks(self):
        with pytest.raises(DomainError):
            convexity_probe_at_origin(FracParams(0.5, 2.0), 0.5)
        with pytest.raises(DomainError):
            convexity_probe_at_origin(FracParams(0.5, 2.0), 0.0)
