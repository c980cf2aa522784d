"""Command-line front door.

Subcommands:
    kernel   tabulate a lattice kernel to JSON or CSV
    apply    apply an operator to a grid-function file
    rho      print the corrector rho_N (optionally both computation paths)
    verify   run the verification suites

Exit codes: 0 success, 1 verification-suite failure, 2 usage/validation
error, 3 numeric failure (quadrature, window, or resolution).
The environment variable LATLAP_QUAD_TOL sets the default relative
quadrature tolerance; the --quad-tol flag overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import operators, spectral, verify
from .grid import delta, load_grid, save_grid
from .kernelnd import (DEFAULT_QUAD, KernelTable, QuadratureConfig,
                       QuadratureError, build_kernel_table, corrector_rho)
from .operators import OperatorSpec, WindowError
from .spectral import ResolutionError

__all__ = ["main"]

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _quad_config(args) -> QuadratureConfig:
    tol = args.quad_tol
    if tol is None:
        env = os.environ.get("LATLAP_QUAD_TOL")
        tol = float(env) if env else DEFAULT_QUAD.rel_tol
    return QuadratureConfig(rel_tol=tol)


def _table_to_csv(table: KernelTable) -> str:
    header = ",".join(f"m_{k+1}" for k in range(table.dimension)) + ",value"
    lines = [header]
    for p in sorted(table.entries):
        coords = ",".join(str(c) for c in p)
        lines.append(f"{coords},{table.entries[p]:.17g}")
    return "\n".join(lines) + "\n"


def _cmd_kernel(args) -> int:
    if args.dim < 1:
        print(f"error: --dim must be >= 1, got {args.dim}", file=sys.stderr)
        return EXIT_USAGE
    if args.radius < 1:
        print(f"error: --radius must be >= 1, got {args.radius}", file=sys.stderr)
        return EXIT_USAGE
    if args.zero_order:
        order: float | str = "zero"
    else:
        if args.s is None:
            print("error: give --s or --zero-order", file=sys.stderr)
            return EXIT_USAGE
        order = args.s
        if order == 0.0 or not (-0.5 * args.dim < order < 1.0):
            print(f"error: --s must lie in (-{args.dim}/2, 0) or (0, 1), "
                  f"got {order}", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.dim == 1:
            # closed forms are the 1-D source of truth (and what apply uses)
            from .kernel1d import kernel_1d, riesz_zero_kernel
            value = (riesz_zero_kernel if order == "zero"
                     else lambda m: kernel_1d(m, order))
            entries = {(m,): value(m) for m in range(-args.radius, args.radius + 1)}
            table = KernelTable(dimension=1, order=order, max_radius=args.radius,
                                quad=_quad_config(args), entries=entries)
        else:
            table = build_kernel_table(args.dim, order, args.radius,
                                       _quad_config(args))
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    text = _table_to_csv(table) if args.format == "csv" else table.to_json()
    out = args.output or f"kernel_dim{args.dim}_{order}_r{args.radius}.{args.format}"
    with open(out, "w") as fh:
        fh.write(text)
    values = [v for p, v in table.entries.items() if any(p)]
    tail = max(table.entries[p] for p in table.entries
               if max(abs(c) for c in p) == table.max_radius) if values else 0.0
    print(f"wrote {out}: {len(table.entries)} entries, "
          f"max value {max(values):.6g}, boundary tail estimate {tail:.3e}")
    return EXIT_OK


_OP_KINDS = {
    "laplacian": "laplacian",
    "fractional": "fractional",
    "riesz": "riesz_negative",
    "riesz-zero": "riesz_zero",
    "log": "log_laplacian",
}


def _cmd_apply(args) -> int:
    try:
        f = load_grid(args.input)
    except FileNotFoundError:
        print(f"error: input file not found: {args.input}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON in {args.input}: line {exc.lineno} "
              f"column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError, TypeError) as exc:
        print(f"error: invalid grid function in {args.input}: {exc}",
              file=sys.stderr)
        return EXIT_USAGE

    try:
        spec = OperatorSpec(kind=_OP_KINDS[args.op], dimension=f.dimension,
                            order=args.s, mesh=f.mesh,
                            kernel_source="closed_form" if f.dimension == 1
                            else "quadrature")
    except ValueError as exc:
        print(f"error: --op/--s: {exc}", file=sys.stderr)
        return EXIT_USAGE

    table = None
    if args.kernel_table:
        try:
            with open(args.kernel_table) as fh:
                table = KernelTable.from_json(fh.read())
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            print(f"error: --kernel-table: {exc}", file=sys.stderr)
            return EXIT_USAGE

    quad = _quad_config(args)
    try:
        result = operators.apply_operator(f, spec, window_radius=args.window_radius,
                                          tail_tol=args.tail_tol, quad=quad,
                                          table=table)
    except WindowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = args.output or "applied.json"
    save_grid(result, out)
    radius = result.window_radius
    tail = result.tail_bound
    print(f"wrote {out}: {len(result.values)} entries"
          + (f", window radius {radius}" if radius is not None else "")
          + (f", tail-error bound {tail:.3e}" if tail is not None else ""))

    if args.spectral_check:
        kind = {"laplacian": "laplacian", "fractional": "fractional",
                "log": "log"}.get(args.op)
        if kind is None:
            print("note: --spectral-check supports laplacian/fractional/log only")
            return EXIT_OK
        sym = spectral.SymbolSpec(kind=kind, s=args.s, h=f.mesh,
                                  dimension=f.dimension)
        try:
            rep = verify.run_spectral_check(f, sym, grid_points=args.grid_points,
                                            window_radius=args.window_radius or 16,
                                            quad=quad)
        except ResolutionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(rep.to_text(), end="")
        if not rep.passed:
            return EXIT_SUITE_FAIL
    return EXIT_OK


def _cmd_rho(args) -> int:
    if args.dim < 1:
        print(f"error: --dim must be >= 1, got {args.dim}", file=sys.stderr)
        return EXIT_USAGE
    quad = _quad_config(args)
    try:
        value = corrector_rho(args.dim, quad)
        print(f"rho_{args.dim} = {value:.12f}")
        if args.cross_check:
            direct = corrector_rho(args.dim, quad, method="lattice")
            print(f"rho_{args.dim} (lattice sum) = {direct:.12f}")
            print(f"path disagreement: {abs(value - direct):.3e}")
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_verify(args) -> int:
    quad = _quad_config(args)
    suites = (["identities", "derivative-plus", "derivative-minus", "spectral"]
              if args.suite == "all" else [args.suite])
    reports = []
    ok = True
    for name in suites:
        if name == "identities":
            rep = verify.run_identity_suite(quad)
        elif name in ("derivative-plus", "derivative-minus"):
            side = name.split("-")[1]
            rep = verify.run_derivative_check(delta(1), side, [0.1, 0.01, 0.001],
                                              quad=quad)
        else:
            rep = verify.run_spectral_check(
                delta(1), spectral.SymbolSpec(kind="fractional", s=0.5),
                grid_points=16384, quad=quad)
        reports.append(rep)
        print(rep.to_text(), end="")
        ok = ok and rep.passed

    out = args.output or "verify_report.json"
    payload = "[\n" + ",\n".join(r.to_json().rstrip() for r in reports) + "\n]\n"
    with open(out, "w") as fh:
        fh.write(payload)
    print(f"wrote {out}")
    return EXIT_OK if ok else EXIT_SUITE_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latlap",
        description="Fractional, zero-order and logarithmic powers of the "
                    "discrete Laplacian on Z^N.")
    parser.add_argument("--quad-tol", type=float, default=None,
                        help="relative quadrature tolerance "
                             "(default: $LATLAP_QUAD_TOL or 1e-10)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="tabulate a kernel")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--s", type=float, default=None, help="order in (-N/2,0) or (0,1)")
    p.add_argument("--zero-order", action="store_true",
                   help="tabulate the zero-order kernel instead of K_s")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("apply", help="apply an operator to a grid function file")
    p.add_argument("--input", required=True)
    p.add_argument("--op", choices=sorted(_OP_KINDS), required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--window-radius", type=int, default=None)
    p.add_argument("--tail-tol", type=float, default=None,
                   help="grow the window until the omitted-tail bound meets this")
    p.add_argument("--kernel-table", default=None,
                   help="use kernel values from a tabulated file")
    p.add_argument("--spectral-check", action="store_true",
                   help="also compare against the Fourier-multiplier path")
    p.add_argument("--grid-points", type=int, default=4096)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("rho", help="compute the corrector rho_N")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--cross-check", action="store_true",
                   help="also print the direct lattice-sum value")
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=("identities", "derivative-plus",
                                     "derivative-minus", "spectral", "all"))
    p.add_argument("--output", default=None,
                   help="report file (default verify_report.json)")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
