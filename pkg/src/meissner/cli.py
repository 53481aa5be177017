"""Command line front end.

Exit codes: 0 success, 2 input validation failure, 1 internal error,
64 usage error.  The unit-distance tolerance defaults to 1e-9 and can
be overridden through the MEISSNER_TOL environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .errors import MeissnerError, ParseError, ValidationError
from .generate import load_vertex_file, regular_pyramid, regular_tetrahedron, save_vertex_file
from .mesh import mesh_area, tessellate, tessellate_reuleaux, write_mesh
from .montecarlo import BallSystem, mc_volume
from .optimize import (
    TETRAHEDRON_AREA,
    OptimizationProblem,
    optimize_meissner,
    optimize_pyramid,
)
from .polytope import (
    SmoothingChoice,
    build_diameter_graph,
    build_meissner,
    enumerate_smoothings,
    find_dual_pairs,
    meissner_area,
    meissner_volume,
    reuleaux_area,
)
from .sphere import EDGE_ARC_MAX, PairLengths, f_pair, f_partial_x

__all__ = ["main", "entry"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="meissner", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="validate a vertex file and report counts")
    p.add_argument("file")

    p = sub.add_parser(
        "analyze",
        help="per-pair angles and closed-form area/volume",
        epilog="CSV schema: pair,e_i,e_j,dual_i,dual_j,theta,theta_dual,phi,phi_dual,alpha,f"
        " followed by meissner_area, meissner_volume and reuleaux_area summary rows.",
    )
    p.add_argument("file")
    p.add_argument("--smoothing", default="optimal", help="'optimal' or 'bits:<01...>', 1 smooths the pair's second edge")
    p.add_argument("--csv", help="also write the report as CSV to this path")

    p = sub.add_parser("enumerate", help="areas of all smoothing choices", epilog="CSV schema: bits,area.")
    p.add_argument("file")
    p.add_argument("--csv", help="write bits,area rows to this path")

    p = sub.add_parser(
        "mc-check",
        help="Monte Carlo volume check against the closed form",
        epilog="Prints one CSV row: volume,std_error,samples,seed,closed_form,sigmas.",
    )
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--smoothing", default="optimal")

    p = sub.add_parser("gen", help="write a reference vertex file")
    p.add_argument("spec", help="'tetra' or 'pyramid:<k>'")
    p.add_argument("--out", required=True)
    p.add_argument("--edges", action="store_true", help="append the diameter graph")

    p = sub.add_parser(
        "pyramid",
        help="optimize pyramids with n base vertices",
        epilog="CSV schema: restart,objective,area,residual,rounds,converged,validated,meets_bound.",
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write one CSV row per restart to this path")

    p = sub.add_parser("search", help="optimize a configuration from a vertex file")
    p.add_argument("file")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser(
        "f-table",
        help="tabulate f over a grid and check its properties",
        epilog="CSV schema: x,y,f with both angles sweeping [0, pi/3].",
    )
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--csv", required=True, help="CSV path for x,y,f rows")

    p = sub.add_parser("mesh", help="tessellate to an OBJ or PLY file")
    p.add_argument("file")
    p.add_argument("--refine", type=int, default=4)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("obj", "ply"), default="obj")
    p.add_argument("--smoothing", default="optimal")
    p.add_argument("--body", choices=("meissner", "reuleaux"), default="meissner")
    return parser


def _tolerance() -> float:
    raw = os.environ.get("MEISSNER_TOL")
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError:
        raise ParseError(f"MEISSNER_TOL is not a number: {raw!r}") from None
    if not 0.0 < tol < 1.0:
        raise ParseError(f"MEISSNER_TOL out of range: {tol!r}")
    return tol


def _smoothing_choice(spec: str, count: int) -> SmoothingChoice | None:
    if spec == "optimal":
        return None
    bits = spec.removeprefix("bits:")
    if bits == spec or len(bits) != count or any(c not in "01" for c in bits):
        raise ParseError(f"smoothing must be 'optimal' or 'bits:' plus {count} characters of 0/1, got {spec!r}")
    return SmoothingChoice(tuple(c == "1" for c in bits))


def _load_meissner(path: str, smoothing: str):
    vs = load_vertex_file(path, _tolerance())
    pairs = find_dual_pairs(build_diameter_graph(vs), vs)
    choice = _smoothing_choice(smoothing, len(pairs))
    return build_meissner(vs, choice), pairs


def _cmd_validate(args) -> int:
    vs = load_vertex_file(args.file, _tolerance())
    pairs = find_dual_pairs(build_diameter_graph(vs), vs)
    print(f"points: {vs.m}")
    print(f"unit distances: {vs.diameter_count}")
    print(f"max distance: {vs.max_distance:.17g}")
    print(f"dual pairs: {len(pairs)}")
    print("valid extremal set")
    return 0


def _cmd_analyze(args) -> int:
    poly, pairs = _load_meissner(args.file, args.smoothing)
    rows = []
    for i, pair in enumerate(pairs):
        g = pair.geometry
        rows.append(
            (
                i,
                pair.edge[0],
                pair.edge[1],
                pair.edge_dual[0],
                pair.edge_dual[1],
                g.lengths.theta,
                g.lengths.theta_dual,
                g.phi,
                g.phi_dual,
                g.alpha,
                f_pair(poly.retained_lengths(i)),
            )
        )
    area = meissner_area(poly)
    volume = meissner_volume(poly)
    r_area = reuleaux_area(poly.vertices, pairs)
    header = "pair,e_i,e_j,dual_i,dual_j,theta,theta_dual,phi,phi_dual,alpha,f"
    print(header)
    for row in rows:
        print(",".join(_fmt(v) for v in row))
    print(f"smoothing,{''.join('1' if b else '0' for b in poly.choice.bits)}")
    print(f"meissner_area,{area:.17g}")
    print(f"meissner_volume,{volume:.17g}")
    print(f"reuleaux_area,{r_area:.17g}")
    if args.csv:
        lines = [header]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        lines.append(f"meissner_area,{area:.17g}")
        lines.append(f"meissner_volume,{volume:.17g}")
        lines.append(f"reuleaux_area,{r_area:.17g}")
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_enumerate(args) -> int:
    vs = load_vertex_file(args.file, _tolerance())
    pairs = find_dual_pairs(build_diameter_graph(vs), vs)
    table = enumerate_smoothings(vs, pairs)
    best = min(range(len(table)), key=lambda i: table[i][1])
    lines = ["bits,area"]
    for choice, area in table:
        bits = "".join("1" if b else "0" for b in choice.bits)
        lines.append(f"{bits},{area:.17g}")
    print("\n".join(lines))
    bits = "".join("1" if b else "0" for b in table[best][0].bits)
    print(f"minimum,{bits},{table[best][1]:.17g}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_mc_check(args) -> int:
    if args.samples < 1:
        raise ParseError(f"--samples must be positive, got {args.samples}")
    if args.threads < 1:
        raise ParseError(f"--threads must be positive, got {args.threads}")
    poly, _ = _load_meissner(args.file, args.smoothing)
    system = BallSystem.from_meissner(poly)
    result = mc_volume(system, args.samples, args.seed, threads=args.threads)
    closed = meissner_volume(poly)
    sigmas = abs(result.volume - closed) / result.std_error if result.std_error > 0 else 0.0
    print("volume,std_error,samples,seed,closed_form,sigmas")
    print(
        f"{result.volume:.17g},{result.std_error:.17g},{result.samples},"
        f"{result.seed},{closed:.17g},{sigmas:.17g}"
    )
    return 0


def _cmd_gen(args) -> int:
    if args.spec == "tetra":
        vs = regular_tetrahedron(_tolerance())
    elif args.spec.startswith("pyramid:"):
        try:
            k = int(args.spec.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad pyramid parameter in {args.spec!r}") from None
        if k < 1:
            raise ParseError(f"pyramid parameter must be positive, got {k}")
        vs = regular_pyramid(k, _tolerance())
    else:
        raise ParseError(f"unknown generator {args.spec!r}, expected 'tetra' or 'pyramid:<k>'")
    save_vertex_file(vs, args.out, edges=args.edges)
    print(f"wrote {vs.m} points to {args.out}")
    return 0


def _cmd_pyramid(args) -> int:
    if args.n < 3 or args.n % 2 == 0 or args.n > 19:
        raise ParseError(f"--n must be odd and in [3, 19], got {args.n}")
    if args.restarts < 1:
        raise ParseError(f"--restarts must be positive, got {args.restarts}")
    report = optimize_pyramid(args.n, restarts=args.restarts, seed=args.seed)
    print(f"best objective: {report.best_objective:.12f}")
    print(f"best area: {report.best_area:.12f}")
    print(f"best volume: {report.best_volume:.12f}")
    print(f"residual: {report.best_residual:.3e}")
    print(f"tetrahedron area bound: {TETRAHEDRON_AREA:.12f}")
    bound = all(r.meets_tetrahedron_bound for r in report.records)
    print(f"all restarts at or above the bound: {'yes' if bound else 'NO'}")
    if args.csv:
        lines = ["restart,objective,area,residual,rounds,converged,validated,meets_bound"]
        for r in report.records:
            lines.append(
                f"{r.restart},{r.objective:.17g},{r.area:.17g},{r.residual:.3e},"
                f"{r.rounds},{int(r.converged)},{int(r.validated)},{int(r.meets_tetrahedron_bound)}"
            )
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_search(args) -> int:
    if args.restarts < 1:
        raise ParseError(f"--restarts must be positive, got {args.restarts}")
    vs = load_vertex_file(args.file, _tolerance())
    problem = OptimizationProblem.from_vertex_set(vs)
    report = optimize_meissner(problem, restarts=args.restarts, seed=args.seed)
    print(f"best objective: {report.best_objective:.12f}")
    print(f"best area: {report.best_area:.12f}")
    print(f"best volume: {report.best_volume:.12f}")
    print(f"residual: {report.best_residual:.3e}")
    for r in report.records:
        flag = "ok" if r.meets_tetrahedron_bound else "BELOW TETRAHEDRON"
        print(
            f"restart {r.restart}: objective {r.objective:.12f} area {r.area:.12f} "
            f"residual {r.residual:.3e} {flag}"
        )
    return 0


def _cmd_f_table(args) -> int:
    if args.grid < 2:
        raise ParseError(f"--grid must be at least 2, got {args.grid}")
    grid = args.grid
    xs = [EDGE_ARC_MAX * i / (grid - 1) for i in range(grid)]
    values = [[f_pair(PairLengths(x, y)) for x in xs] for y in xs]
    lines = ["x,y,f"]
    for yi, y in enumerate(xs):
        for xi, x in enumerate(xs):
            lines.append(f"{x:.17g},{y:.17g},{values[yi][xi]:.17g}")
    with open(args.csv, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    checks = {
        "increasing_x": all(
            values[yi][xi + 1] >= values[yi][xi] - 1e-12
            for yi in range(grid)
            for xi in range(grid - 1)
        ),
        "increasing_y": all(
            values[yi + 1][xi] >= values[yi][xi] - 1e-12
            for yi in range(grid - 1)
            for xi in range(grid)
        ),
        "convex_x": all(
            values[yi][xi + 1] - 2 * values[yi][xi] + values[yi][xi - 1] >= -1e-12
            for yi in range(grid)
            for xi in range(1, grid - 1)
        ),
        "convex_y": all(
            values[yi + 1][xi] - 2 * values[yi][xi] + values[yi - 1][xi] >= -1e-12
            for yi in range(1, grid - 1)
            for xi in range(grid)
        ),
        "swap_dominance": all(
            values[yi][xi] >= values[xi][yi] - 1e-12
            for yi in range(grid)
            for xi in range(yi + 1)
        ),
        "derivative_match": _derivative_check(),
    }
    for name, ok in checks.items():
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
    print(f"wrote {grid * grid} rows to {args.csv}")
    return 0 if all(checks.values()) else 1


def _derivative_check() -> bool:
    h = 1e-6
    for x in (0.1, 0.5, 0.9):
        for y in (0.2, 0.6, 1.0):
            fd = (f_pair(PairLengths(x + h, y)) - f_pair(PairLengths(x - h, y))) / (2 * h)
            exact = f_partial_x(PairLengths(x, y))
            if abs(fd - exact) > 1e-6 * max(1.0, abs(exact)):
                return False
    return True


def _cmd_mesh(args) -> int:
    if not 0 <= args.refine <= 8:
        raise ParseError(f"--refine must be in [0, 8], got {args.refine}")
    poly, pairs = _load_meissner(args.file, args.smoothing)
    if args.body == "meissner":
        mesh = tessellate(poly, args.refine)
        closed = meissner_area(poly)
    else:
        mesh = tessellate_reuleaux(poly.vertices, pairs, args.refine)
        closed = reuleaux_area(poly.vertices, pairs)
    write_mesh(mesh, args.out, args.format)
    area = mesh_area(mesh)
    print(f"vertices: {len(mesh.vertices)}")
    print(f"triangles: {len(mesh.faces)}")
    print(f"mesh area: {area:.12f}")
    print(f"closed form: {closed:.12f}")
    print(f"relative gap: {abs(area - closed) / closed:.3e}")
    return 0


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


_COMMANDS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "enumerate": _cmd_enumerate,
    "mc-check": _cmd_mc_check,
    "gen": _cmd_gen,
    "pyramid": _cmd_pyramid,
    "search": _cmd_search,
    "f-table": _cmd_f_table,
    "mesh": _cmd_mesh,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MeissnerError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
