#!/usr/bin/env python3
"""The headline phenomenon: differentiating s -> (-Lap)^s at s = 0.

The difference quotient [(-Lap)^s f - f]/s converges, in sup norm and
from BOTH sides of 0, to the logarithmic Laplacian

    1-D, mesh h:  -sum_{m != n} f(m)/|n-m| - (log h^2) f(n)
    Z^N, N >= 2:  -sum_{m != n} K(n-m) f(m) + rho_N f(n)

i.e. to minus the zero-order (exotic) Riesz potential plus an explicit
multiple of the identity.  This script traces the convergence numerically
for a delta and for a random 5-point function, in one and two dimensions.
"""

import numpy as np

from latlap import (GridFunction, corrector_rho, delta, difference_quotient,
                    linf_norm, log_laplacian, subtract)
from latlap.verify import run_derivative_check


def trace(f, label, radius):
    print(f"--- {label} ---")
    target = log_laplacian(f, window_radius=radius)
    print(f"{'s':>10} {'sup error (plus)':>18} {'sup error (minus)':>18}")
    for s in (0.1, 0.01, 0.001):
        ep = linf_norm(subtract(
            difference_quotient(f, s, window_radius=radius), target))
        em = linf_norm(subtract(
            difference_quotient(f, -s, window_radius=radius), target))
        print(f"{s:>10} {ep:>18.3e} {em:>18.3e}")
    rep = run_derivative_check(f, "plus", [0.1, 0.01, 0.001],
                               window_radius=radius)
    print(f"fitted convergence rate (plus side): {rep.fitted_rate:.3f}")
    print()


print("=" * 72)
print("Convergence of [(-Lap)^s f - f]/s to the logarithmic Laplacian")
print("=" * 72)
print()

trace(delta(1), "delta at the origin, Z^1", radius=12)

rng = np.random.default_rng(42)
pts = {}
while len(pts) < 5:
    pts[tuple(rng.integers(-2, 3, 1))] = float(rng.uniform(-1, 1))
trace(GridFunction(1, pts), "random 5-point function, Z^1", radius=12)

trace(delta(2), "delta at the origin, Z^2", radius=5)

print("=" * 72)
print("The corrector rho_N (the identity coefficient for N >= 2)")
print("=" * 72)
for n in (1, 2, 3):
    print(f"  rho_{n} = {corrector_rho(n):+.12f}"
          + ("   (exactly zero: on Z^1 no corrector survives)" if n == 1 else ""))
print()
print("cross-check by the direct lattice sum (no conservation shortcut):")
for n in (1, 2, 3):
    a = corrector_rho(n)
    b = corrector_rho(n, method="lattice")
    print(f"  rho_{n}: conservation {a:+.12f}   lattice {b:+.12f}   "
          f"diff {abs(a - b):.1e}")

print()
print("=" * 72)
print("What the logarithmic Laplacian looks like on a delta (Z^1, h = 1)")
print("=" * 72)
g = log_laplacian(delta(1), window_radius=8)
for n in range(-8, 9):
    bar = "#" * int(40 * abs(g((n,))))
    print(f"  n = {n:+3d}: {g((n,)):+8.4f}  {bar}")
print("(minus the exotic Riesz potential: 0 at the origin, -1/|n| elsewhere)")
