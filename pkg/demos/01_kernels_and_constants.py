#!/usr/bin/env python3
"""Walk through the lattice kernels and their normalization constants.

The fractional power (-Lap)^s on Z has a fully explicit kernel built from
Gamma functions; on Z^N (N >= 2) the kernel is an integral of the heat
kernel and must be computed by quadrature.  This script shows both, checks
them against each other on Z^1, and demonstrates the two constants that
control the s -> 0 behavior: the total kernel mass S_s and the derivative
of the normalization c_h(s) at 0.
"""

import math

import numpy as np

from latlap import (EULER_GAMMA, build_kernel_table, kernel_1d, kernel_nd,
                    kernel_sum_1d, normalization_c, riesz_zero_kernel,
                    zero_order_kernel)

print("=" * 72)
print("1. The 1-D kernel: K_s(m) = |s| c(s) Gamma(|m|-s)/Gamma(|m|+1+s)")
print("=" * 72)
print(f"{'m':>4} {'s=0.25':>12} {'s=0.5':>12} {'s=0.75':>12} {'s=-0.25':>12}")
for m in (1, 2, 3, 5, 10, 20):
    row = [kernel_1d(m, s) for s in (0.25, 0.5, 0.75, -0.25)]
    print(f"{m:>4} " + " ".join(f"{v:12.6f}" for v in row))
print()
print(f"closed-form anchor: K_0.5(1) = {kernel_1d(1, 0.5):.15f}")
print(f"                    4/(3 pi) = {4 / (3 * math.pi):.15f}")

print()
print("=" * 72)
print("2. Quadrature kernels agree with the closed form on Z^1")
print("=" * 72)
for s in (-0.25, 0.5, 0.9):
    worst = max(abs(kernel_nd((m,), s) - kernel_1d(m, s)) for m in range(1, 11))
    print(f"  s = {s:+.2f}: max |quadrature - closed form| over m=1..10: {worst:.2e}")

print()
print("=" * 72)
print("3. The zero-order kernel (exotic Riesz potential)")
print("=" * 72)
print("on Z^1 the heat-kernel integral collapses to 1/|m|:")
for m in (1, 2, 5):
    print(f"  K({m}) = {zero_order_kernel((m,)):.12f}   1/|m| = {riesz_zero_kernel(m):.12f}")
print("on Z^2 there is no closed form; a few values:")
for m in ((1, 0), (1, 1), (3, 4)):
    print(f"  K({m}) = {zero_order_kernel(m):.12f}")

print()
print("=" * 72)
print("4. Constants governing the s -> 0 limit")
print("=" * 72)
print("total kernel mass S_s -> 1 (the difference quotient exists):")
for s in (0.5, 0.1, 0.01, 0.001):
    print(f"  s = {s:<6}: S_s = {kernel_sum_1d(s):.10f}")
print()
print("derivative of the normalization c_h at s = 0 equals -2 gamma - log h^2:")
step = 1e-6
for h in (0.5, 1.0, 2.0):
    slope = (normalization_c(step, h) - normalization_c(-step, h)) / (2 * step)
    print(f"  h = {h}: c'(0) = {slope:+.9f}   "
          f"-2 gamma - log h^2 = {-2 * EULER_GAMMA - math.log(h * h):+.9f}")

print()
print("=" * 72)
print("5. Tabulating a 2-D kernel (one quadrature per symmetry orbit)")
print("=" * 72)
table = build_kernel_table(2, 0.5, 3)
print(f"built {len(table.entries)} entries for |m|_inf <= 3 at s = 0.5")
print("slice m_2 = 0..3, m_1 = 0..3:")
for b in range(4):
    print("   " + " ".join(f"{table.entries[(a, b)]:10.6f}" for a in range(4)))
