"""Finitely supported real-valued functions on the integer lattice Z^N.

A :class:`GridFunction` is the object every operator in this package acts
on.  It stores a finite map ``point -> value``; absent points evaluate to
zero.  Instances are immutable after construction and safe to share.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping

__all__ = [
    "GridFunction",
    "delta",
    "l1_norm",
    "linf_norm",
    "weighted_norm",
    "add",
    "subtract",
    "scale",
    "grid_to_json",
    "grid_from_json",
    "save_grid",
    "load_grid",
]

LatticePoint = tuple[int, ...]


class GridFunction:
    """Finitely supported function Z^N -> R.

    Parameters
    ----------
    dimension : int
        Lattice dimension N >= 1.
    values : mapping from N-tuples of ints to floats
        The support and values.  Exact zeros are dropped.
    mesh : float
        Mesh size h > 0.  Only meaningful for N = 1; for N >= 2 the mesh
        is fixed to 1.
    """

    __slots__ = ("dimension", "mesh", "values", "window_radius", "tail_bound",
                 "truncation_radius")

    def __init__(self, dimension: int, values: Mapping[Iterable[int], float],
                 mesh: float = 1.0):
        if dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {dimension}")
        if not mesh > 0.0:
            raise ValueError(f"mesh must be positive, got {mesh}")
        if dimension >= 2 and mesh != 1.0:
            raise ValueError("mesh is only meaningful for dimension 1")
        clean: dict[LatticePoint, float] = {}
        for p, v in values.items():
            pt = tuple(int(c) for c in p)
            if len(pt) != dimension:
                raise ValueError(f"point {pt} does not have {dimension} coordinates")
            v = float(v)
            if not math.isfinite(v):
                raise ValueError(f"non-finite value {v} at {pt}")
            if v != 0.0:
                clean[pt] = v
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "mesh", float(mesh))
        object.__setattr__(self, "values", clean)
        # metadata optionally attached by operators (not part of equality)
        object.__setattr__(self, "window_radius", None)
        object.__setattr__(self, "tail_bound", None)
        object.__setattr__(self, "truncation_radius", None)

    def __setattr__(self, name, value):
        if name in ("window_radius", "tail_bound", "truncation_radius"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("GridFunction is immutable")

    def __call__(self, point: Iterable[int]) -> float:
        return self.values.get(tuple(point), 0.0)

    def support(self) -> list[LatticePoint]:
        """Support points in lexicographic order."""
        return sorted(self.values)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GridFunction)
                and self.dimension == other.dimension
                and self.mesh == other.mesh
                and self.values == other.values)

    def __repr__(self) -> str:
        return (f"GridFunction(dimension={self.dimension}, mesh={self.mesh}, "
                f"support={len(self.values)} points)")


def delta(dimension: int, point: Iterable[int] = None, mesh: float = 1.0) -> GridFunction:
    """Indicator of a single lattice point (the origin by default)."""
    if point is None:
        point = (0,) * dimension
    return GridFunction(dimension, {tuple(point): 1.0}, mesh=mesh)


def l1_norm(f: GridFunction) -> float:
    return sum(abs(v) for v in f.values.values())


def linf_norm(f: GridFunction) -> float:
    return max((abs(v) for v in f.values.values()), default=0.0)


def weighted_norm(f: GridFunction, s: float) -> float:
    """Decay-weighted norm sum |f(n)| / (1+|n|)^(N+2s).

    For N = 1 this is the classical weight (1+|n|)^(1+2s); the exponent
    N + 2s matches the decay of the order-s convolution kernels in any
    dimension.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"weighted_norm requires 0 <= s <= 1, got {s}")
    expo = f.dimension + 2.0 * s
    return sum(abs(v) / (1.0 + math.sqrt(sum(c * c for c in p))) ** expo
               for p, v in f.values.items())


def _check_compatible(f: GridFunction, g: GridFunction) -> None:
    if f.dimension != g.dimension:
        raise ValueError(f"dimension mismatch: {f.dimension} vs {g.dimension}")
    if f.mesh != g.mesh:
        raise ValueError(f"mesh mismatch: {f.mesh} vs {g.mesh}")


def add(f: GridFunction, g: GridFunction) -> GridFunction:
    _check_compatible(f, g)
    out = dict(f.values)
    for p, v in g.values.items():
        out[p] = out.get(p, 0.0) + v
    return GridFunction(f.dimension, out, mesh=f.mesh)


def subtract(f: GridFunction, g: GridFunction) -> GridFunction:
    _check_compatible(f, g)
    out = dict(f.values)
    for p, v in g.values.items():
        out[p] = out.get(p, 0.0) - v
    return GridFunction(f.dimension, out, mesh=f.mesh)


def scale(f: GridFunction, c: float) -> GridFunction:
    return GridFunction(f.dimension, {p: c * v for p, v in f.values.items()},
                        mesh=f.mesh)


# ---------------------------------------------------------------------------
# JSON serialization: {dimension, mesh, entries: [{coords, value}]} with
# entries sorted lexicographically and values printed to 17 significant
# digits so files round-trip bit-exactly.

def grid_to_json(f: GridFunction) -> str:
    lines = ["{", f'  "dimension": {f.dimension},', f'  "mesh": {f.mesh!r},',
             '  "entries": [']
    entries = []
    for p in sorted(f.values):
        coords = ", ".join(str(c) for c in p)
        entries.append(f'    {{"coords": [{coords}], "value": {f.values[p]:.17g}}}')
    lines.append(",\n".join(entries))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def grid_from_json(text: str) -> GridFunction:
    doc = json.loads(text)
    values = {tuple(e["coords"]): float(e["value"]) for e in doc["entries"]}
    return GridFunction(int(doc["dimension"]), values, mesh=float(doc["mesh"]))


def save_grid(f: GridFunction, path) -> None:
    with open(path, "w") as fh:
        fh.write(grid_to_json(f))


def load_grid(path) -> GridFunction:
    with open(path) as fh:
        return grid_from_json(fh.read())
