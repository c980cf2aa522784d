"""Shared test utilities and independent numeric oracles.

The oracles here deliberately avoid the code paths they are used to check:
the Bessel oracle is a plain power series, the Riesz oracle integrates the
heat semigroup in the t variable directly (no log substitution, different
splits), and the brute-force Gamma sums are straight summation.
"""

import math

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from latlap.grid import GridFunction


def bessel_i_series(order: int, z: float, terms: int = 120) -> float:
    """I_order(z) by its power series: sum_k (z/2)^(2k+order) / (k! (k+order)!).

    Adequate for z <= ~30; used as the oracle for scaled Bessel values.
    """
    order = abs(order)
    half = z / 2.0
    total = 0.0
    for k in range(terms):
        log_term = ((2 * k + order) * math.log(half)
                    - math.lgamma(k + 1) - math.lgamma(k + order + 1))
        total += math.exp(log_term)
    return total


def scaled_bessel_oracle(order: int, t: float) -> float:
    return math.exp(-2.0 * t) * bessel_i_series(order, 2.0 * t)


def brute_gamma_ratio_sum(k: int, s: float, cutoff: int) -> float:
    """sum_{k <= |m| <= cutoff} Gamma(|m|-s)/Gamma(|m|+1+s), summed directly
    (small terms first)."""
    m = np.arange(k, cutoff + 1, dtype=float)
    ratios = np.exp(gammaln(m - s) - gammaln(m + 1 + s))
    return 2.0 * float(ratios[::-1].sum())


def riesz_semigroup_oracle(n: tuple, s: float) -> float:
    """(-Lap)^s delta_0 (n) for s < 0, straight from the heat-semigroup
    definition: Gamma(-s)^{-1} int_0^inf G_t(n) t^{-s-1} dt.

    Integrates in t on (0, 1] and in v = 1/t on (0, 1] for the tail; relies
    only on the scaled Bessel evaluation, not on the package's kernel
    quadrature engine.
    """
    from latlap.special import scaled_bessel_i

    def hk(t):
        out = 1.0
        for c in n:
            out *= scaled_bessel_i(abs(c), t)
        return out

    head, _ = integrate.quad(lambda t: hk(t) * t ** (-s - 1.0), 0.0, 1.0,
                             epsabs=1e-13, epsrel=1e-12, limit=400)
    tail, _ = integrate.quad(lambda v: hk(1.0 / v) * v ** (s - 1.0), 0.0, 1.0,
                             epsabs=1e-13, epsrel=1e-12, limit=400)
    return (head + tail) / math.gamma(-s)


def random_grid(rng, dimension: int, npoints: int = 5, radius: int = 2,
                mesh: float = 1.0) -> GridFunction:
    """Random finitely supported function with distinct support points."""
    pts = set()
    while len(pts) < npoints:
        pts.add(tuple(int(c) for c in rng.integers(-radius, radius + 1, dimension)))
    values = {p: float(rng.uniform(-1.0, 1.0)) for p in pts}
    return GridFunction(dimension, values, mesh=mesh)


def sup_distance(f: GridFunction, g: GridFunction) -> float:
    keys = f.values.keys() | g.values.keys()
    return max((abs(f(n) - g(n)) for n in keys), default=0.0)
