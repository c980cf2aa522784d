"""Gamma-family and Bessel primitives used by every kernel formula.

Everything here is a pure function of its arguments.  Evaluation is routed
through log-domain arithmetic so that no public operation returns NaN/Inf
on its stated domain.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

__all__ = [
    "EULER_GAMMA",
    "euler_gamma",
    "log_gamma",
    "digamma",
    "gamma_ratio",
    "scaled_bessel_i",
    "bessel_sum_radius",
]

#: Euler-Mascheroni constant, correctly rounded to double precision.
EULER_GAMMA = float(np.euler_gamma)

# scipy.special.ive underflows to NaN for very large arguments; beyond this
# switch point the Hankel asymptotic expansion is already at machine precision
# for the (small) orders that reach it.
_IVE_ARG_MAX = 1e8


def euler_gamma() -> float:
    """The Euler-Mascheroni constant gamma = lim (H_n - log n)."""
    return EULER_GAMMA


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0.

    Raises:
        ValueError: if ``x <= 0`` (the real log-Gamma has poles there).
    """
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(_sp.gammaln(x))


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    if not x > 0.0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    return float(_sp.psi(x))


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) for a, b > 0, computed as exp(log_gamma(a) - log_gamma(b)).

    Never forms the two Gamma values separately, so the quotient stays finite
    even when both numerator and denominator would overflow.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"gamma_ratio requires positive arguments, got ({a}, {b})")
    return float(math.exp(_sp.gammaln(a) - _sp.gammaln(b)))


def _hankel_terms(order: int, z: float, kmax: int = 14) -> float:
    # e^{-z} I_nu(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(nu) / z^k  (large z)
    mu = 4.0 * order * order
    total = 1.0
    term = 1.0
    for k in range(1, kmax + 1):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        if abs(term) >= 1.0:
            # divergent regime: order too large for this z
            raise ValueError(
                f"asymptotic Bessel expansion invalid for order={order}, z={z:g}"
            )
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * z)


def scaled_bessel_i(order: int, t):
    """Exponentially scaled modified Bessel function e^{-2t} I_order(2t).

    Parameters
    ----------
    order : int
        Bessel order; negative values are mapped to ``|order|`` (I_{-n} = I_n).
    t : float or ndarray
        Strictly positive time(s).

    Returns
    -------
    float or ndarray in (0, 1].
    """
    order = abs(int(order))
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0):
        raise ValueError("scaled_bessel_i requires t > 0")
    z = 2.0 * t_arr
    out = _sp.ive(order, z)
    big = z > _IVE_ARG_MAX
    if np.any(big):
        flat = np.atleast_1d(out)
        zflat = np.atleast_1d(z)
        for idx in np.nonzero(np.atleast_1d(big))[0]:
            flat[idx] = _hankel_terms(order, float(zflat[idx]))
        out = flat.reshape(np.shape(out))
    return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out


def bessel_sum_radius(t: float) -> int:
    """Truncation radius for sums of e^{-2t} I_n(2t) over the order n.

    Beyond the transition region n ~ 2t the scaled Bessel values decay
    super-exponentially; this rule keeps the discarded tail below 1e-10
    of the (unit) total mass.
    """
    return int(math.ceil(2.0 * t + 12.0 * math.sqrt(2.0 * t) + 20.0))
