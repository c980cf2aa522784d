import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latlap.special import (EULER_GAMMA, bessel_sum_radius, digamma,
                            euler_gamma, gamma_ratio, log_gamma,
                            scaled_bessel_i)

from helpers import scaled_bessel_oracle

# Reference values computed offline at 40 significant digits (mpmath) and
# frozen; spans the accuracy domain [1e-3, 1e6].
LOG_GAMMA_TABLE = [
    (0.001, 6.9071788853838536825),
    (0.002, 6.2134569537593599657),
    (0.005, 5.2954517999821278812),
    (0.01, 4.5994798780420217225),
    (0.02, 3.9008045160983759721),
    (0.05, 2.9688792010517308254),
    (0.1, 2.2527126517342059599),
    (0.2, 1.5240638224307845249),
    (0.3, 1.0957979948180755217),
    (0.4, 0.79667781770178376654),
    (0.5, 0.57236494292470008707),
    (0.6, 0.39823385806923489962),
    (0.7, 0.26086724653166651439),
    (0.8, 0.15205967839983758878),
    (0.9, 0.066376239734742971189),
    (1.0, 0.0),
    (1.2, -0.08537409000331584972),
    (1.5, -0.12078223763524522235),
    (1.7, -0.095807697407065864527),
    (2.0, 0.0),
    (2.5, 0.28468287047291915963),
    (3.0, 0.69314718055994530942),
    (4.0, 1.7917594692280550008),
    (5.0, 3.1780538303479456196),
    (6.5, 5.6625620598571415285),
    (8.0, 8.5251613610654143002),
    (10.0, 12.801827480081469611),
    (12.5, 18.734347511936445702),
    (15.0, 25.1912211827386815),
    (20.0, 39.339884187199494036),
    (30.0, 71.25703896716800901),
    (50.0, 144.56574394634488601),
    (75.0, 247.57291409618688394),
    (100.0, 359.13420536957539878),
    (150.0, 600.00947055532742811),
    (250.0, 1128.5237708729907142),
    (400.0, 1994.5092334361334071),
    (650.0, 3557.7126164351717382),
    (1000.0, 5905.2204232091812118),
    (2500.0, 17057.121976001839975),
    (5000.0, 37582.626315685350332),
    (10000.0, 82099.717496442377273),
    (25000.0, 228161.63322257305787),
    (50000.0, 490984.42327157182173),
    (100000.0, 1051287.7089736568949),
    (250000.0, 2857298.7535418639871),
    (500000.0, 6061176.0464591755665),
    (750000.0, 9395865.519158771442),
    (900000.0, 11439129.101939407667),
    (1000000.0, 12815504.56914761166),
]


class TestLogGamma:
    def test_reference_table(self):
        for x, want in LOG_GAMMA_TABLE:
            got = log_gamma(x)
            scale = max(abs(want), 1.0)
            assert abs(got - want) <= 1e-13 * scale, f"x={x}"

    def test_trivial_values(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
        # ln sqrt(pi), high-precision constant oracle
        assert log_gamma(0.5) == pytest.approx(0.57236494292470008707, abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-1.3)


class TestDigamma:
    def test_at_one(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)

    def test_at_half(self):
        # psi(1/2) = -gamma - 2 log 2, checked against the series oracle
        assert digamma(0.5) == pytest.approx(-1.963510026021423479441, abs=1e-14)

    def test_harmonic_identity(self):
        # psi(k) = H_{k-1} - gamma for integers
        harmonic = 0.0
        for k in range(2, 101):
            harmonic += 1.0 / (k - 1)
            assert abs(digamma(float(k)) - (harmonic - EULER_GAMMA)) <= 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            digamma(-0.5)


class TestGammaRatio:
    def test_recurrence(self):
        for k in (1, 2, 7, 40):
            assert gamma_ratio(k, k + 1) == pytest.approx(1.0 / k, rel=1e-13)

    def test_identity_case(self):
        assert gamma_ratio(1.0, 1.0) == 1.0

    def test_half_integers(self):
        # Gamma(0.5) = sqrt(pi), Gamma(2.5) = 0.75 sqrt(pi)
        assert gamma_ratio(0.5, 2.5) == pytest.approx(4.0 / 3.0, rel=1e-13)

    def test_large_arguments_stay_finite(self):
        assert gamma_ratio(1e6 - 0.25, 1e6 + 1.25) > 0.0

    def test_bound_small_s(self):
        # Gamma(k-s)/Gamma(k+1+s) <= (k-s)^{-(1+2s)}
        for s in (0.05, 0.1, 0.25, 0.5):
            for k in range(1, 201):
                assert gamma_ratio(k - s, k + 1 + s) <= (k - s) ** (-(1 + 2 * s))

    def test_derivative_is_minus_two_digamma(self):
        step = 1e-5
        for k in (1, 2, 5, 10, 50):
            slope = (gamma_ratio(k - step, k + step)
                     - gamma_ratio(k + step, k - step)) / (2 * step)
            assert abs(slope + 2.0 * digamma(float(k))) <= 1e-6

    def test_domain(self):
        with pytest.raises(ValueError):
            gamma_ratio(-1.0, 2.0)
        with pytest.raises(ValueError):
            gamma_ratio(1.0, 0.0)


class TestEulerGamma:
    def test_value(self):
        assert euler_gamma() == 0.5772156649015329

    def test_digamma_relation(self):
        assert abs(digamma(1.0) + euler_gamma()) <= 1e-12

    def test_sanity_bound(self):
        assert math.exp(-euler_gamma()) > 0.5


class TestScaledBessel:
    def test_small_t_limit(self):
        assert scaled_bessel_i(0, 1e-12) == pytest.approx(1.0, abs=1e-11)

    def test_against_series_oracle(self):
        for order in (0, 1, 3, 10, 25):
            for t in (0.05, 0.5, 1.0, 4.0, 12.0):
                want = scaled_bessel_oracle(order, t)
                assert scaled_bessel_i(order, t) == pytest.approx(want, rel=1e-11)

    def test_negative_order_symmetry(self):
        assert scaled_bessel_i(-3, 2.0) == scaled_bessel_i(3, 2.0)

    def test_range(self):
        for order in (0, 2, 100):
            for t in (1e-3, 1.0, 1e3, 1e5):
                v = scaled_bessel_i(order, t)
                assert 0.0 <= v <= 1.0
                if order <= 2:  # far below the transition region underflows
                    assert v > 0.0

    def test_huge_argument_branch(self):
        # beyond scipy's range the asymptotic continuation takes over
        v = scaled_bessel_i(2, 1e13)
        assert v == pytest.approx(1.0 / math.sqrt(4.0 * math.pi * 1e13), rel=1e-6)

    @given(st.floats(min_value=0.01, max_value=50.0),
           st.integers(min_value=0, max_value=40))
    @settings(max_examples=200, deadline=None)
    def test_strictly_decreasing_in_order(self, t, order):
        assert scaled_bessel_i(order, t) > scaled_bessel_i(order + 1, t)

    def test_conservation_under_tail_rule(self):
        # sum_n e^{-2t} I_n(2t) = 1; the tail rule must capture it to 1e-10
        for t in (0.1, 1.0, 10.0):
            radius = bessel_sum_radius(t)
            orders = np.arange(-radius, radius + 1)
            total = sum(scaled_bessel_i(int(n), t) for n in orders)
            assert abs(total - 1.0) <= 1e-10

    def test_domain(self):
        with pytest.raises(ValueError):
            scaled_bessel_i(0, 0.0)
        with pytest.raises(ValueError):
            scaled_bessel_i(1, -2.0)
