"""Lattice operators: -Laplacian, its fractional powers (both signs of the
order), the exotic Riesz potential, and the logarithmic Laplacian.

Application uses the finite support of the input:

* order s in (0,1) (difference form):
      (-Lap)^s f(n) = S_s f(n) - sum_{m in supp f, m != n} K_s(n-m) f(m),
  where S_s = sum_{d != 0} K_s(d) is computed in closed form (1-D) or by a
  scalar conservation-reduced quadrature (N-D).  No kernel sum is ever
  truncated, so the only approximation is the output window.

* order s in (-N/2,0) (convolution form):
      (-Lap)^s f(n) = kappa_s f(n) + sum_{m in supp f, m != n} K_s(n-m) f(m),
  with the diagonal weight kappa_s = Gamma(-s)^{-1} int_0^inf G_t(0)
  t^{-s-1} dt that the heat-semigroup definition assigns to lag zero.
  Without it the difference quotient [( -Lap)^s f - f]/s could not stay
  bounded as s -> 0-.

* the logarithmic Laplacian is the two-sided derivative of s -> (-Lap)^s
  at 0: minus the zero-order convolution, plus (-log h^2) f in 1-D or
  rho_N f for N >= 2.

Results are reported on a configurable output window (the support dilated
by ``window_radius``); values beyond it are omitted, with the documented
bound ``l1_norm(f) * max_{|d| > R} K(d)`` attached to the result as
``tail_bound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grid import GridFunction, l1_norm
from . import kernel1d
from . import kernelnd
from .kernelnd import DEFAULT_QUAD, KernelTable, QuadratureConfig

__all__ = [
    "OperatorSpec",
    "WindowError",
    "discrete_laplacian",
    "fractional_laplacian",
    "riesz_potential",
    "exotic_riesz_potential",
    "log_laplacian",
    "difference_quotient",
    "apply_operator",
]

DEFAULT_WINDOW_RADIUS = 16
_MAX_WINDOW_RADIUS = {1: 4096, 2: 128, 3: 48}


class WindowError(RuntimeError):
    """Requested tail tolerance unreachable within the window-radius cap."""


@dataclass(frozen=True)
class OperatorSpec:
    """Identifies one of the lattice operators.

    kind: "laplacian" | "fractional" | "riesz_negative" | "log_laplacian"
          | "riesz_zero"
    order: s for the fractional/riesz_negative kinds, ignored otherwise
    kernel_source: "closed_form" (1-D Gamma formulas) or "quadrature"
    """

    kind: str
    dimension: int
    order: float | None = None
    mesh: float = 1.0
    kernel_source: str = "closed_form"

    def __post_init__(self):
        kinds = ("laplacian", "fractional", "riesz_negative", "log_laplacian",
                 "riesz_zero")
        if self.kind not in kinds:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kernel_source not in ("closed_form", "quadrature"):
            raise ValueError(f"unknown kernel_source {self.kernel_source!r}")
        if self.kind == "fractional":
            if self.order is None or not 0.0 < self.order < 1.0:
                raise ValueError(f"fractional order must lie in (0,1), got {self.order}")
        if self.kind == "riesz_negative":
            if self.order is None or not -0.5 * self.dimension < self.order < 0.0:
                raise ValueError(
                    f"riesz order must lie in (-{self.dimension}/2, 0), got {self.order}")


# ---------------------------------------------------------------------------
# Kernel access: closed form on Z^1, quadrature elsewhere.

class _KernelSource:
    def __init__(self, f: GridFunction, s: float | None, quad: QuadratureConfig,
                 source: str | None, table: KernelTable | None):
        self.dim = f.dimension
        self.h = f.mesh
        self.s = s
        self.quad = quad
        if table is not None:
            if table.dimension != f.dimension:
                raise ValueError(f"kernel table dimension {table.dimension} != "
                                 f"grid dimension {f.dimension}")
            if s is not None and (table.order == "zero" or float(table.order) != s):
                raise ValueError(f"kernel table order {table.order!r} != requested {s}")
        self.table = table
        if source is None:
            source = "closed_form" if self.dim == 1 else "quadrature"
        if source == "closed_form" and self.dim != 1:
            raise ValueError("closed-form kernels exist only on Z^1")
        self.source = source
        # mesh scaling for quadrature kernels: K^h_s = h^{-2s} K_s on Z^1
        self.mesh_scale = self.h ** (-2.0 * s) if (s is not None and self.h != 1.0) else 1.0

    def kernel(self, d: tuple[int, ...]) -> float:
        if self.table is not None:
            rep = tuple(sorted(abs(c) for c in d))
            if max(rep, default=0) <= self.table.max_radius:
                return self.mesh_scale * self.table.value(rep)
        if self.source == "closed_form":
            return kernel1d.kernel_1d(d[0], self.s, self.h)
        return self.mesh_scale * kernelnd.kernel_nd(d, self.s, self.quad)

    def kernel_sum(self) -> float:
        if self.source == "closed_form":
            return kernel1d.kernel_sum_1d(self.s, self.h)
        return self.mesh_scale * kernelnd.kernel_sum_nd(self.dim, self.s, self.quad)

    def diagonal_weight(self) -> float:
        if self.source == "closed_form":
            return kernel1d.diagonal_weight_1d(self.s, self.h)
        return self.mesh_scale * kernelnd.diagonal_weight_nd(self.dim, self.s, self.quad)

    def zero_kernel(self, d: tuple[int, ...]) -> float:
        if self.dim == 1:
            return kernel1d.riesz_zero_kernel(d[0])
        if self.table is not None and self.table.order == "zero":
            rep = tuple(sorted(abs(c) for c in d))
            if max(rep, default=0) <= self.table.max_radius:
                return self.table.value(rep)
        return kernelnd.zero_order_kernel(d, self.quad)

    def axis_value(self, r: int, zero_order: bool = False) -> float:
        d = (r,) + (0,) * (self.dim - 1)
        return self.zero_kernel(d) if zero_order else self.kernel(d)


# ---------------------------------------------------------------------------
# Window machinery.

def _window_points(f: GridFunction, radius: int) -> list[tuple[int, ...]]:
    pts: set[tuple[int, ...]] = set()

    def dilate(center: tuple[int, ...], prefix: tuple[int, ...]):
        if len(prefix) == f.dimension:
            pts.add(prefix)
            return
        c = center[len(prefix)]
        for x in range(c - radius, c + radius + 1):
            dilate(center, prefix + (x,))

    for p in f.support():
        dilate(p, ())
    return sorted(pts)


def _resolve_window(f: GridFunction, src, radius: int | None, tail_tol: float | None,
                    zero_order: bool = False) -> tuple[int, float]:
    """Pick the window radius and the documented tail bound.

    The kernels decay monotonically along every coordinate, so the largest
    omitted kernel value on |d|_inf = R+1 sits on an axis.
    """
    mass = l1_norm(f)
    if radius is None:
        radius = DEFAULT_WINDOW_RADIUS
    cap = _MAX_WINDOW_RADIUS.get(f.dimension, 32)
    if tail_tol is not None:
        r = radius
        while mass * src.axis_value(r + 1, zero_order) > tail_tol:
            r += max(1, r // 2)
            if r > cap:
                raise WindowError(
                    f"tail tolerance {tail_tol:g} needs window radius > {cap}; "
                    f"bound at radius {cap} is "
                    f"{mass * src.axis_value(cap + 1, zero_order):.3e}")
        radius = r
    return radius, mass * src.axis_value(radius + 1, zero_order)


def _sorted_support(f: GridFunction, n: tuple[int, ...]) -> list[tuple[int, ...]]:
    # fixed summation order: closest lattice points first, lexicographic ties
    return sorted(f.support(),
                  key=lambda m: (sum((a - b) ** 2 for a, b in zip(n, m)), m))


def _attach(result: GridFunction, radius: int, tail: float) -> GridFunction:
    result.window_radius = radius
    result.tail_bound = tail
    return result


# ---------------------------------------------------------------------------
# Operators.

def discrete_laplacian(f: GridFunction) -> GridFunction:
    """-Laplacian: n -> -(1/h^2) sum_k [f(n+e_k) + f(n-e_k) - 2 f(n)]."""
    inv_h2 = 1.0 / (f.mesh * f.mesh)
    out: dict[tuple[int, ...], float] = {}
    for p, v in f.values.items():
        out[p] = out.get(p, 0.0) + 2.0 * f.dimension * inv_h2 * v
        for k in range(f.dimension):
            for step in (-1, 1):
                q = p[:k] + (p[k] + step,) + p[k + 1:]
                out[q] = out.get(q, 0.0) - inv_h2 * v
    return GridFunction(f.dimension, out, mesh=f.mesh)


def fractional_laplacian(f: GridFunction, s: float, *,
                         window_radius: int | None = None,
                         tail_tol: float | None = None,
                         quad: QuadratureConfig = DEFAULT_QUAD,
                         kernel_source: str | None = None,
                         table: KernelTable | None = None) -> GridFunction:
    """(-Laplacian)^s for s in (0, 1), in the kernel-difference form
    n -> sum_{m != n} K_s(n-m) (f(n) - f(m))."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"fractional order must lie in (0,1), got {s}")
    src = _KernelSource(f, s, quad, kernel_source, table)
    radius, tail = _resolve_window(f, src, window_radius, tail_tol)
    total_mass = src.kernel_sum()
    out: dict[tuple[int, ...], float] = {}
    for n in _window_points(f, radius):
        acc = f(n) * total_mass
        for m in _sorted_support(f, n):
            if m != n:
                acc -= src.kernel(tuple(a - b for a, b in zip(n, m))) * f.values[m]
        out[n] = acc
    return _attach(GridFunction(f.dimension, out, mesh=f.mesh), radius, tail)


def riesz_potential(f: GridFunction, s: float, *,
                    window_radius: int | None = None,
                    tail_tol: float | None = None,
                    quad: QuadratureConfig = DEFAULT_QUAD,
                    kernel_source: str | None = None,
                    table: KernelTable | None = None) -> GridFunction:
    """Discrete Riesz potential (-Laplacian)^s for s in (-N/2, 0):
    convolution with the order-s kernel plus the diagonal weight kappa_s."""
    if not (-0.5 * f.dimension < s < 0.0):
        raise ValueError(
            f"riesz order must lie in (-{f.dimension}/2, 0), got {s}")
    src = _KernelSource(f, s, quad, kernel_source, table)
    radius, tail = _resolve_window(f, src, window_radius, tail_tol)
    kappa = src.diagonal_weight()
    out: dict[tuple[int, ...], float] = {}
    for n in _window_points(f, radius):
        acc = kappa * f(n)
        for m in _sorted_support(f, n):
            if m != n:
                acc += src.kernel(tuple(a - b for a, b in zip(n, m))) * f.values[m]
        out[n] = acc
    return _attach(GridFunction(f.dimension, out, mesh=f.mesh), radius, tail)


def exotic_riesz_potential(f: GridFunction, *,
                           window_radius: int | None = None,
                           tail_tol: float | None = None,
                           quad: QuadratureConfig = DEFAULT_QUAD,
                           table: KernelTable | None = None) -> GridFunction:
    """Zero-order Riesz potential: convolution with 1/|m| on Z^1 and with
    the zero-order heat-kernel integral K(m) for N >= 2."""
    src = _KernelSource(f, None, quad, None if f.dimension > 1 else "closed_form", table)
    radius, tail = _resolve_window(f, src, window_radius, tail_tol, zero_order=True)
    out: dict[tuple[int, ...], float] = {}
    for n in _window_points(f, radius):
        acc = 0.0
        for m in _sorted_support(f, n):
            if m != n:
                acc += src.zero_kernel(tuple(a - b for a, b in zip(n, m))) * f.values[m]
        out[n] = acc
    return _attach(GridFunction(f.dimension, out, mesh=f.mesh), radius, tail)


def log_laplacian(f: GridFunction, *,
                  window_radius: int | None = None,
                  tail_tol: float | None = None,
                  quad: QuadratureConfig = DEFAULT_QUAD,
                  table: KernelTable | None = None) -> GridFunction:
    """Logarithmic Laplacian, the derivative of s -> (-Laplacian)^s at 0.

    1-D, mesh h:   n -> -sum_{m != n} f(m)/|n-m| - (log h^2) f(n)
    N >= 2:        n -> -sum_{m != n} K(n-m) f(m) + rho_N f(n)
    """
    conv = exotic_riesz_potential(f, window_radius=window_radius,
                                  tail_tol=tail_tol, quad=quad, table=table)
    if f.dimension == 1:
        const = -math.log(f.mesh * f.mesh)
    else:
        const = kernelnd.corrector_rho(f.dimension, quad)
    out = {n: -v for n, v in conv.values.items()}
    for p, v in f.values.items():
        out[p] = out.get(p, 0.0) + const * v
    return _attach(GridFunction(f.dimension, out, mesh=f.mesh),
                   conv.window_radius, conv.tail_bound)


def difference_quotient(f: GridFunction, s: float, *,
                        window_radius: int | None = None,
                        quad: QuadratureConfig = DEFAULT_QUAD,
                        kernel_source: str | None = None) -> GridFunction:
    """[(-Laplacian)^s f - f] / s, the quantity whose s -> 0 limit (from
    either side) is the logarithmic Laplacian."""
    if s == 0.0:
        raise ValueError("difference quotient needs s != 0")
    if s > 0.0:
        g = fractional_laplacian(f, s, window_radius=window_radius, quad=quad,
                                 kernel_source=kernel_source)
    else:
        g = riesz_potential(f, s, window_radius=window_radius, quad=quad,
                            kernel_source=kernel_source)
    out = dict(g.values)
    for p, v in f.values.items():
        out[p] = out.get(p, 0.0) - v
    out = {p: v / s for p, v in out.items()}
    return _attach(GridFunction(f.dimension, out, mesh=f.mesh),
                   g.window_radius, abs(g.tail_bound / s))


def apply_operator(f: GridFunction, spec: OperatorSpec, *,
                   window_radius: int | None = None,
                   tail_tol: float | None = None,
                   quad: QuadratureConfig = DEFAULT_QUAD,
                   table: KernelTable | None = None) -> GridFunction:
    """Dispatch on an :class:`OperatorSpec` (the CLI entry point)."""
    if spec.dimension != f.dimension:
        raise ValueError(f"spec dimension {spec.dimension} != grid dimension {f.dimension}")
    source = spec.kernel_source if f.dimension == 1 else "quadrature"
    if spec.kind == "laplacian":
        return discrete_laplacian(f)
    if spec.kind == "fractional":
        return fractional_laplacian(f, spec.order, window_radius=window_radius,
                                    tail_tol=tail_tol, quad=quad,
                                    kernel_source=source, table=table)
    if spec.kind == "riesz_negative":
        return riesz_potential(f, spec.order, window_radius=window_radius,
                               tail_tol=tail_tol, quad=quad,
                               kernel_source=source, table=table)
    if spec.kind == "riesz_zero":
        return exotic_riesz_potential(f, window_radius=window_radius,
                                      tail_tol=tail_tol, quad=quad, table=table)
    return log_laplacian(f, window_radius=window_radius, tail_tol=tail_tol,
                         quad=quad, table=table)
