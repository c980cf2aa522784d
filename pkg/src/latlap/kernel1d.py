"""Closed-form kernels on the 1-D mesh Z_h.

For order s in (0,1) the fractional-Laplacian kernel, for s in (-1/2,0)
the Riesz-potential kernel, and at s = 0 the kernel 1/|m| of the exotic
(zero-order) Riesz potential.  Everything is a ratio of Gamma functions
and is evaluated in log domain.
"""

from __future__ import annotations

import math

from .special import gamma_ratio, log_gamma

__all__ = [
    "kernel_1d",
    "normalization_c",
    "riesz_zero_kernel",
    "tail_sum_closed_form",
    "kernel_sum_1d",
    "diagonal_weight_1d",
]

_SQRT_PI = math.sqrt(math.pi)


def _check_order(s: float) -> None:
    if not (-0.5 < s < 1.0) or s == 0.0:
        raise ValueError(f"order must lie in (-1/2, 0) or (0, 1), got {s}")


def normalization_c(s: float, h: float = 1.0) -> float:
    """c_h(s) = pi^{-1/2} (2/h)^{2s} Gamma(1/2+s) / Gamma(1-s).

    Continuous through s = 0 with c_h(0) = 1; the removable point is
    returned exactly so finite differences around 0 are noise-free.
    """
    if not (-0.5 < s < 1.0):
        raise ValueError(f"normalization_c requires -1/2 < s < 1, got {s}")
    if not h > 0.0:
        raise ValueError(f"mesh must be positive, got {h}")
    if s == 0.0:
        return 1.0
    return math.exp(2.0 * s * math.log(2.0 / h)
                    + log_gamma(0.5 + s) - log_gamma(1.0 - s)) / _SQRT_PI


def kernel_1d(m: int, s: float, h: float = 1.0) -> float:
    """Order-s convolution kernel on Z_h.

    K^h_s(m) = |s| pi^{-1/2} (2/h)^{2s} Gamma(1/2+s)/Gamma(1-s)
               * Gamma(|m|-s)/Gamma(|m|+1+s)      for m != 0,

    and 0 at m = 0.  Positive for both signs of s: the |s| prefactor is
    s for the fractional range (0,1) and -s for the potential range
    (-1/2, 0).
    """
    _check_order(s)
    m = abs(int(m))
    if m == 0:
        return 0.0
    return abs(s) * normalization_c(s, h) * gamma_ratio(m - s, m + 1 + s)


def riesz_zero_kernel(m: int) -> float:
    """Kernel of the exotic (order-zero) discrete Riesz potential: 1/|m|, 0 at 0."""
    m = abs(int(m))
    return 0.0 if m == 0 else 1.0 / m


def tail_sum_closed_form(k: int, s: float) -> float:
    """Exact value of sum_{|m|>=k} Gamma(|m|-s)/Gamma(|m|+1+s).

    Equals Gamma(k-s) / (s Gamma(k+s)) for integer k >= 1 and 0 < s < 1/2.
    """
    if k < 1 or int(k) != k:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0.0 < s < 0.5:
        raise ValueError(f"tail_sum_closed_form requires 0 < s < 1/2, got {s}")
    return gamma_ratio(k - s, k + s) / s


def kernel_sum_1d(s: float, h: float = 1.0) -> float:
    """Total kernel mass sum_{m != 0} K^h_s(m) for s in (0, 1).

    By the Beta-function telescoping identity this is
    c_h(s) Gamma(1-s)/Gamma(1+s); it tends to 1 as s -> 0+.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"kernel_sum_1d requires 0 < s < 1, got {s}")
    return normalization_c(s, h) * gamma_ratio(1.0 - s, 1.0 + s)


def diagonal_weight_1d(s: float, h: float = 1.0) -> float:
    """Lag-0 weight of the order-s Riesz potential, s in (-1/2, 0).

    The heat-semigroup definition of the negative power assigns mass
    pi^{-1/2} (2/h)^{2s} Gamma(1/2+s)/Gamma(1+s) to the diagonal; it tends
    to 1 as s -> 0-.  (For s > 0 the corresponding integral diverges and
    the fractional Laplacian uses the difference form instead.)
    """
    if not -0.5 < s < 0.0:
        raise ValueError(f"diagonal_weight_1d requires -1/2 < s < 0, got {s}")
    return math.exp(2.0 * s * math.log(2.0 / h)
                    + log_gamma(0.5 + s) - log_gamma(1.0 + s)) / _SQRT_PI
