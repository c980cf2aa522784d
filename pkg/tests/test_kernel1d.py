import math

import pytest

from latlap.kernel1d import (diagonal_weight_1d, kernel_1d, kernel_sum_1d,
                             normalization_c, riesz_zero_kernel,
                             tail_sum_closed_form)
from latlap.special import EULER_GAMMA, gamma_ratio

from helpers import brute_gamma_ratio_sum


class TestKernel1d:
    def test_half_order_anchor(self):
        # Gamma(1) = 1, Gamma(0.5) = sqrt(pi), Gamma(2.5) = 0.75 sqrt(pi)
        assert kernel_1d(1, 0.5) == pytest.approx(4.0 / (3.0 * math.pi), rel=1e-14)

    def test_origin_vanishes(self):
        for s in (-0.3, 0.1, 0.5, 0.9):
            for h in (0.5, 1.0, 2.0):
                assert kernel_1d(0, s, h) == 0.0

    def test_even_in_m(self):
        for s in (-0.25, 0.5):
            for m in (1, 2, 7):
                assert kernel_1d(-m, s) == kernel_1d(m, s)

    def test_positive_both_signs_of_order(self):
        for s in (-0.49, -0.1, 0.1, 0.9):
            for m in (1, 3, 10):
                assert kernel_1d(m, s) > 0.0

    def test_mesh_scaling(self):
        # K^h_s = h^{-2s} K^1_s
        for s in (-0.25, 0.5):
            assert kernel_1d(3, s, 2.0) == pytest.approx(
                2.0 ** (-2 * s) * kernel_1d(3, s), rel=1e-13)

    def test_order_domain(self):
        for s in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                kernel_1d(1, s)

    def test_small_s_limit_is_riesz_zero(self):
        # first-order error coefficient is 2 gamma + 2 psi(m) + 1/m, which
        # grows like 2 log m; at s = 1e-4 that allows 5e-4 only up to m ~ 5
        from latlap.special import digamma
        s = 1e-4
        for m in range(1, 51):
            rel = abs(kernel_1d(m, s) / s - riesz_zero_kernel(m)) * m
            coeff = 2.0 * EULER_GAMMA + 2.0 * digamma(float(m)) + 1.0 / m
            assert rel <= 1.1 * coeff * s + 1e-7
            if m <= 5:
                assert rel <= 5e-4


class TestNormalization:
    def test_at_zero(self):
        assert normalization_c(0.0, 1.0) == 1.0
        assert normalization_c(0.0, 2.0) == 1.0

    def test_derivative_at_zero(self):
        # c_h'(0) = -2 gamma - log h^2
        step = 1e-5
        for h in (0.5, 1.0, 2.0):
            slope = (normalization_c(step, h) - normalization_c(-step, h)) / (2 * step)
            want = -2.0 * EULER_GAMMA - math.log(h * h)
            assert abs(slope - want) <= 1e-6

    def test_continuity_at_zero(self):
        assert normalization_c(1e-9, 1.0) == pytest.approx(1.0, abs=1e-8)
        assert normalization_c(-1e-9, 1.0) == pytest.approx(1.0, abs=1e-8)

    def test_domain(self):
        with pytest.raises(ValueError):
            normalization_c(1.0, 1.0)
        with pytest.raises(ValueError):
            normalization_c(0.5, -1.0)


class TestRieszZeroKernel:
    def test_values(self):
        assert riesz_zero_kernel(1) == 1.0
        assert riesz_zero_kernel(0) == 0.0
        assert riesz_zero_kernel(-4) == 0.25


class TestTailSum:
    def test_boundary_limit_is_four(self):
        # at k=1, s -> 1/2: Gamma(0.5)/(0.5 Gamma(1.5)) = 4 exactly
        assert tail_sum_closed_form(1, 0.5 - 1e-11) == pytest.approx(4.0, abs=1e-9)

    def test_against_brute_force(self):
        # partial sums match the telescoped closed form; straight truncation
        # leaves a Theta(M^{-2s}/s) tail, so the comparison subtracts the
        # closed-form remainder at the cutoff
        cutoff = 100_000
        s = 0.25
        for k in (1, 4, 8):
            partial = brute_gamma_ratio_sum(k, s, cutoff)
            closed = (tail_sum_closed_form(k, s)
                      - tail_sum_closed_form(cutoff + 1, s))
            assert abs(partial - closed) <= 1e-6

    def test_truncation_error_within_integral_bound(self):
        # |sum_{k..M} - closed(k)| <= (M-s)^{-2s}/s by the ratio bound
        cutoff = 100_000
        for k, s in ((1, 0.1), (4, 0.25), (8, 0.4)):
            partial = brute_gamma_ratio_sum(k, s, cutoff)
            closed = tail_sum_closed_form(k, s)
            assert abs(partial - closed) <= (cutoff - s) ** (-2 * s) / s

    def test_s_times_tail_tends_to_one(self):
        assert abs(1e-6 * tail_sum_closed_form(1, 1e-6) - 1.0) <= 1e-5

    def test_domain(self):
        with pytest.raises(ValueError):
            tail_sum_closed_form(0, 0.25)
        with pytest.raises(ValueError):
            tail_sum_closed_form(1, 0.5)
        with pytest.raises(ValueError):
            tail_sum_closed_form(1, -0.1)


class TestScalarReductions:
    def test_kernel_sum_matches_brute_force(self):
        s, h = 0.5, 1.0
        brute = sum(kernel_1d(m, s, h) for m in range(1, 100_001)) * 2.0
        # tail beyond the cutoff ~ c(s) M^{-2s}
        assert kernel_sum_1d(s, h) == pytest.approx(brute, abs=1e-4)

    def test_kernel_sum_is_prefactor_times_tail(self):
        for s in (0.1, 0.25, 0.4):
            want = s * normalization_c(s) * tail_sum_closed_form(1, s)
            assert kernel_sum_1d(s) == pytest.approx(want, rel=1e-13)

    def test_kernel_sum_tends_to_one(self):
        assert kernel_sum_1d(1e-7) == pytest.approx(1.0, abs=1e-5)

    def test_diagonal_weight_tends_to_one(self):
        assert diagonal_weight_1d(-1e-7) == pytest.approx(1.0, abs=1e-5)

    def test_diagonal_weight_closed_form(self):
        s = -0.25
        want = (4.0 ** s / math.sqrt(math.pi)) * gamma_ratio(0.5 + s, 1.0 + s)
        assert diagonal_weight_1d(s) == pytest.approx(want, rel=1e-13)

    def test_domains(self):
        with pytest.raises(ValueError):
            kernel_sum_1d(-0.1)
        with pytest.raises(ValueError):
            diagonal_weight_1d(0.25)
