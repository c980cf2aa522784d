"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Every tolerance is pinned here; nothing is deferred to runtime calibration.
"""

import math
import time

import numpy as np
import pytest

from latlap.grid import GridFunction, delta, l1_norm, linf_norm
from latlap.heat import conservation_defect, heat_semigroup_apply
from latlap.kernel1d import (kernel_1d, normalization_c, riesz_zero_kernel,
                             tail_sum_closed_form)
from latlap.kernelnd import corrector_rho, kernel_nd, zero_order_kernel
from latlap.operators import (discrete_laplacian, fractional_laplacian,
                              log_laplacian)
from latlap.special import EULER_GAMMA, bessel_sum_radius, digamma, gamma_ratio
from latlap.spectral import SymbolSpec, multiplier_apply, multiplier_apply_function
from latlap.verify import run_derivative_check

from helpers import brute_gamma_ratio_sum, random_grid, sup_distance

RHO_2 = 1.1662436161232751
RHO_3 = 1.6733893029701967


class _Budget:
    def __init__(self, name: str, seconds: float):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[{self.name}] {status} ({elapsed:.2f}s, budget {self.seconds:.0f}s)")
        if exc_type is None:
            assert elapsed < self.seconds, f"{self.name} exceeded runtime budget"
        return False


def test_criterion_1_gamma_identity_suite():
    with _Budget("criterion 1: gamma identity suite", 5.0):
        cutoff = 100_000
        for k in (1, 2, 4, 8):
            for s in (0.1, 0.25, 0.4):
                partial = brute_gamma_ratio_sum(k, s, cutoff)
                # identity check at 1e-6: the partial sum against the
                # telescoped closed form (plain truncation leaves a
                # Theta(M^{-2s}/s) tail, checked by the bound below)
                closed_window = (tail_sum_closed_form(k, s)
                                 - tail_sum_closed_form(cutoff + 1, s))
                assert abs(partial - closed_window) <= 1e-6, (k, s)
                # rigorous truncation bound for the full closed form
                assert abs(partial - tail_sum_closed_form(k, s)) \
                    <= (cutoff - s) ** (-2 * s) / s, (k, s)
        for s in (0.1, 0.25, 0.4):
            for k in range(1, 201):
                assert gamma_ratio(k - s, k + 1 + s) <= (k - s) ** (-(1 + 2 * s))
        step = 1e-5
        for k in (1, 2, 4, 8, 20):
            slope = (gamma_ratio(k - step, k + step)
                     - gamma_ratio(k + step, k - step)) / (2 * step)
            assert abs(slope + 2.0 * digamma(float(k))) <= 1e-6


def test_criterion_2_normalization_derivative():
    with _Budget("criterion 2: normalization derivative", 1.0):
        step = 1e-5
        for h in (0.5, 1.0, 2.0):
            slope = (normalization_c(step, h)
                     - normalization_c(-step, h)) / (2 * step)
            want = -2.0 * EULER_GAMMA - math.log(h * h)
            assert abs(slope - want) <= 1e-6, h


def test_criterion_3_kernel_cross_validation():
    with _Budget("criterion 3: kernel cross-validation", 30.0):
        for s in (-0.25, 0.1, 0.5, 0.9):
            for m in range(1, 21):
                assert abs(kernel_nd((m,), s) - kernel_1d(m, s)) <= 1e-8, (s, m)
        for m in range(1, 21):
            assert abs(zero_order_kernel((m,)) - riesz_zero_kernel(m)) <= 1e-8, m


def test_criterion_4_corrector_consistency():
    with _Budget("criterion 4: corrector consistency", 60.0):
        assert abs(corrector_rho(1)) <= 1e-8
        for n, pinned in ((2, RHO_2), (3, RHO_3)):
            conserved = corrector_rho(n)
            direct = corrector_rho(n, method="lattice")
            assert abs(conserved - direct) <= 1e-7, n
            assert conserved == pytest.approx(pinned, abs=1e-8), n


def test_criterion_5_two_sided_derivative_convergence():
    with _Budget("criterion 5: two-sided derivative convergence", 120.0):
        rng = np.random.default_rng(12345)
        cases = []
        for dim in (1, 2):
            cases.append((f"delta N={dim}", delta(dim)))
            cases.append((f"random5 N={dim}", random_grid(rng, dim, npoints=5)))
        for name, f in cases:
            radius = 10 if f.dimension == 1 else 5
            for side in ("plus", "minus"):
                rep = run_derivative_check(f, side, [0.1, 0.01, 0.001],
                                           window_radius=radius)
                errs = [row["sup_error"] for row in rep.rows]
                assert errs[0] > errs[1] > errs[2], (name, side, errs)
                assert 0.7 <= rep.fitted_rate <= 1.3, (name, side, rep.fitted_rate)


def test_criterion_6_spectral_dual_path():
    with _Budget("criterion 6: spectral dual-path", 60.0):
        window = 20
        f = delta(1)
        lap_mult = multiplier_apply(f, SymbolSpec(kind="laplacian"), 4096,
                                    window_radius=window)
        assert sup_distance(lap_mult, discrete_laplacian(f)) <= 1e-12

        frac_mult = multiplier_apply(f, SymbolSpec(kind="fractional", s=0.5),
                                     16384, window_radius=window)
        frac_kern = fractional_laplacian(f, 0.5, window_radius=window)
        assert sup_distance(frac_mult, frac_kern) <= 1e-8

        log_mult = multiplier_apply(f, SymbolSpec(kind="log"), 4096,
                                    window_radius=window)
        log_kern = log_laplacian(f, window_radius=window)
        assert sup_distance(log_mult, log_kern) <= 1e-6

        for t in (0.5, 1.0):
            w = heat_semigroup_apply(f, t)

            def heat_symbol(axes, t=t):
                return np.exp(-4.0 * t * np.sin(np.pi * axes[0]) ** 2)

            m = multiplier_apply_function(f, heat_symbol, 512,
                                          window_radius=window)
            worst = max(abs(m(n) - w(n)) for n in m.support())
            assert worst <= 1e-9, t


def test_criterion_7_conservation():
    with _Budget("criterion 7: heat-kernel conservation", 10.0):
        for t in (0.1, 1.0, 10.0):
            radius = bessel_sum_radius(t)
            for dim in (1, 2, 3):
                assert conservation_defect(t, dim, radius) <= 1e-10, (t, dim)


def test_criterion_8_operator_bound():
    with _Budget("criterion 8: log-Laplacian sup bound", 10.0):
        rng = np.random.default_rng(777)
        for _ in range(200):
            h = float(rng.choice([0.25, 0.5, 1.0, 2.0, 4.0]))
            npts = int(rng.integers(1, 9))
            f = random_grid(rng, 1, npoints=npts, radius=6, mesh=h)
            g = log_laplacian(f, window_radius=12)
            bound = l1_norm(f) + abs(math.log(h * h)) * linf_norm(f)
            assert linf_norm(g) <= bound + 1e-12
