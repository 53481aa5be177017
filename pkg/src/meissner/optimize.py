"""Area minimization over extremal configurations with fixed combinatorics.

Both searches maximize the total smoothing gain (equivalently minimize
the closed-form surface area) under the unit-distance constraints of a
diameter graph, using Nelder-Mead inside a quadratic penalty loop whose
weight grows tenfold per round until the worst constraint residual
drops below FEASIBILITY_TOL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InfeasibleStart, NotAWheel, ValidationError
from .polytope import (
    DiameterGraph,
    VertexSet,
    build_diameter_graph,
    build_meissner,
    dual_pair_indices,
    meissner_area,
    validate_vertex_set,
)
from .sphere import PairLengths, chord_to_arc, dihedral_angle

__all__ = [
    "FEASIBILITY_TOL",
    "TETRAHEDRON_AREA",
    "TETRAHEDRON_VOLUME",
    "OptimizationProblem",
    "RestartRecord",
    "OptimizationReport",
    "pyramid_objective",
    "optimize_pyramid",
    "optimize_meissner",
    "random_feasible_pyramid",
]

FEASIBILITY_TOL = 1e-8
START_RESIDUAL_MAX = 0.1
_MAX_ROUNDS = 18
_STALL_ROUNDS = 3
_COS30 = math.cos(math.pi / 6)

TETRAHEDRON_AREA = 2.0 * math.pi - (math.sqrt(3.0) / 2.0) * math.pi * math.acos(1.0 / 3.0)
TETRAHEDRON_VOLUME = TETRAHEDRON_AREA / 2.0 - math.pi / 3.0


@dataclass(frozen=True, slots=True)
class OptimizationProblem:
    """Fixed diameter-graph combinatorics plus a starting configuration."""

    graph: DiameterGraph
    start: np.ndarray

    @classmethod
    def from_vertex_set(cls, vs: VertexSet) -> "OptimizationProblem":
        return cls(build_diameter_graph(vs), np.array(vs.points))


@dataclass(frozen=True, slots=True)
class RestartRecord:
    restart: int
    objective: float
    area: float
    residual: float
    rounds: int
    converged: bool
    validated: bool
    meets_tetrahedron_bound: bool


@dataclass(frozen=True, slots=True)
class OptimizationReport:
    best_objective: float
    best_area: float
    best_volume: float
    best_points: np.ndarray
    best_residual: float
    records: tuple[RestartRecord, ...]
    trajectory: tuple[float, ...]


def pyramid_objective(vs: VertexSet) -> float:
    """Sum over dual pairs of cos(theta(e')/2)*phi(e') with e' the apex edge.

    Requires wheel combinatorics; the Meissner area of the pyramid is
    then 2*pi - (pi/3) times this value, so larger is better.  The value
    never exceeds 3*(sqrt(3)/2)*arccos(1/3), attained by tetrahedra.
    """
    graph = build_diameter_graph(vs)
    hub = _wheel_hub(graph)
    total = []
    for e, e_dual in dual_pair_indices(graph):
        apex, base = (e, e_dual) if hub in e else (e_dual, e)
        if hub not in apex or hub in base:
            raise NotAWheel(f"pair {(e, e_dual)} does not split into apex and base edges")
        pts = vs.points
        theta_apex = chord_to_arc(float(np.linalg.norm(pts[apex[0]] - pts[apex[1]])), vs.tol)
        theta_base = chord_to_arc(float(np.linalg.norm(pts[base[0]] - pts[base[1]])), vs.tol)
        phi_apex = dihedral_angle(PairLengths(theta_apex, theta_base))
        total.append(math.cos(theta_apex / 2) * phi_apex)
    return math.fsum(total)


def optimize_pyramid(n: int, restarts: int = 1, seed: int = 0) -> OptimizationReport:
    """Search wheel pyramids with n base vertices for minimal Meissner area.

    Base points stay on the unit sphere around the apex, parametrized by
    spherical angles, so only the base diagonal constraints are penalized.
    Restart 0 starts from the regular pyramid; later restarts perturb it.
    """
    if n < 3 or n % 2 == 0 or n > 19:
        raise ValueError(f"base count must be odd and in [3, 19], got {n}")
    k = (n - 1) // 2
    angles0 = _regular_angles(k)
    if _pyramid_residual(angles0, k) > START_RESIDUAL_MAX:
        raise InfeasibleStart("regular pyramid start violates its own constraints")

    records: list[RestartRecord] = []
    trajectories: list[tuple[float, ...]] = []
    points: list[np.ndarray] = []
    for run in range(restarts):
        if run == 0:
            angles = angles0.copy()
        else:
            # widen the spread with the restart index; the interesting
            # degenerate corners sit far from the regular configuration
            sigma = min(0.03 + 0.02 * (run - 1), 0.3)
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(run,))))
            angles = angles0 + sigma * rng.normal(size=angles0.shape)
            projected = _project_diagonals(angles, k)
            if projected is not None:
                angles = projected
        final, rounds, traj, best = _penalty_loop(
            angles,
            _pyramid_soft_objective,
            lambda v: _pyramid_penalty(v, k),
            lambda v: _pyramid_residual(v, k),
            lambda v: _evaluate_pyramid(_pyramid_points(v)),
            project=lambda v: _project_diagonals(v, k),
        )
        if best is not None:
            objective, area, validated, final, residual = best
        else:
            objective, area, validated, _ = _evaluate_pyramid(_pyramid_points(final))
            residual = _pyramid_residual(final, k)
        records.append(
            RestartRecord(
                restart=run,
                objective=objective,
                area=area,
                residual=residual,
                rounds=rounds,
                converged=best is not None,
                validated=validated,
                meets_tetrahedron_bound=area >= TETRAHEDRON_AREA - 1e-6,
            )
        )
        trajectories.append(traj)
        points.append(_pyramid_points(final))
    return _assemble_report(records, trajectories, points)


def optimize_meissner(problem: OptimizationProblem, restarts: int = 1, seed: int = 0) -> OptimizationReport:
    """Search configurations with the problem's diameter graph for minimal area.

    Coordinates are gauge-fixed (first vertex pinned, second on the x
    axis, third in the xy plane); graph edges are equality constraints
    at distance one, non-edges inequality constraints at most one.  The
    objective for each dual pair takes the better smoothing orientation.
    """
    graph = problem.graph
    pairs = dual_pair_indices(graph)
    m = graph.m
    edges = set(graph.edges)
    non_edges = [(i, j) for i in range(m) for j in range(i + 1, m) if (i, j) not in edges]
    x0 = _gauge_coords(np.array(problem.start, dtype=float))
    if _general_residual(x0, m, graph.edges, non_edges) > START_RESIDUAL_MAX:
        raise InfeasibleStart("start configuration violates the distance constraints")

    records: list[RestartRecord] = []
    trajectories: list[tuple[float, ...]] = []
    points: list[np.ndarray] = []
    for run in range(restarts):
        if run == 0:
            x = x0.copy()
        else:
            sigma = min(0.01 + 0.01 * (run - 1), 0.1)
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(run,))))
            x = x0 + sigma * rng.normal(size=x0.shape)
            projected = _project_edges(x, m, graph.edges)
            if projected is not None:
                x = projected
        final, rounds, traj, best = _penalty_loop(
            x,
            lambda v: _general_soft_objective(v, m, pairs),
            lambda v: _general_penalty(v, m, graph.edges, non_edges),
            lambda v: _general_residual(v, m, graph.edges, non_edges),
            lambda v: _evaluate_general(_coords_to_points(v, m), pairs),
            project=lambda v: _project_edges(v, m, graph.edges),
        )
        if best is not None:
            objective, area, validated, final, residual = best
        else:
            objective, area, validated, _ = _evaluate_general(_coords_to_points(final, m), pairs)
            residual = _general_residual(final, m, graph.edges, non_edges)
        records.append(
            RestartRecord(
                restart=run,
                objective=objective,
                area=area,
                residual=residual,
                rounds=rounds,
                converged=best is not None,
                validated=validated,
                meets_tetrahedron_bound=area >= TETRAHEDRON_AREA - 1e-6,
            )
        )
        trajectories.append(traj)
        points.append(_coords_to_points(final, m))
    return _assemble_report(records, trajectories, points)


def random_feasible_pyramid(k: int, seed: int, scale: float = 0.05) -> VertexSet:
    """Random extremal wheel pyramid near the regular one.

    Perturbs the spherical angles and projects back onto the diagonal
    constraints by Gauss-Newton, so the result validates at the default
    tolerance.
    """
    n = 2 * k + 1
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    for _ in range(20):
        angles = _regular_angles(k) + scale * rng.normal(size=2 * n)
        angles = _project_diagonals(angles, k)
        if angles is None:
            continue
        pts = _pyramid_points(angles)
        try:
            return validate_vertex_set(pts)
        except ValidationError:
            continue
    raise InfeasibleStart(f"no feasible perturbed pyramid found for k={k}, seed={seed}")


def _regular_angles(k: int) -> np.ndarray:
    n = 2 * k + 1
    rho = math.asin(1.0 / (2.0 * math.sin(math.pi * k / n)))
    angles = np.empty(2 * n)
    angles[0::2] = rho
    angles[1::2] = [2.0 * math.pi * i / n for i in range(n)]
    return angles


def _pyramid_points(angles: np.ndarray) -> np.ndarray:
    rho = angles[0::2]
    psi = angles[1::2]
    base = np.stack(
        (np.sin(rho) * np.cos(psi), np.sin(rho) * np.sin(psi), np.cos(rho)), axis=1
    )
    return np.vstack((np.zeros(3), base))


def _base_chords(angles: np.ndarray, step: int) -> np.ndarray:
    pts = _pyramid_points(angles)[1:]
    return np.linalg.norm(pts - np.roll(pts, -step, axis=0), axis=1)


def _pyramid_soft_objective(angles: np.ndarray) -> float:
    chords = _base_chords(angles, 1)
    half_sin = np.clip(chords / 2.0, 0.0, 1.0)
    phi = 2.0 * np.arcsin(np.clip(half_sin / _COS30, 0.0, 1.0))
    return float(_COS30 * phi.sum())


def _pyramid_penalty(angles: np.ndarray, k: int) -> float:
    n = 2 * k + 1
    total = 0.0
    eq = _base_chords(angles, k)
    total += float(((eq * eq - 1.0) ** 2).sum())
    for step in range(1, k):
        d = _base_chords(angles, step)
        total += float((np.maximum(0.0, d * d - 1.0) ** 2).sum())
    return total


def _pyramid_residual(angles: np.ndarray, k: int) -> float:
    res = float(np.abs(_base_chords(angles, k) - 1.0).max())
    for step in range(1, k):
        res = max(res, float(np.maximum(0.0, _base_chords(angles, step) - 1.0).max()))
    return res


def _merged_distinct(pts: np.ndarray, tol: float = 1e-5) -> np.ndarray | None:
    """Drop vertices closer than tol to an earlier one; None when none merge."""
    reps: list[np.ndarray] = []
    for p in pts:
        if all(float(np.linalg.norm(p - r)) > tol for r in reps):
            reps.append(p)
    if len(reps) == len(pts):
        return None
    return np.array(reps)


def _evaluate_pyramid(pts: np.ndarray) -> tuple[float, float, bool, bool]:
    """Objective, area, strict-validity flag, on-domain flag.

    Points that fail strict validation get a second chance after merging
    coincident vertices: the collapse of a pyramid onto a smaller wheel
    (the tetrahedron, in the limit) is then scored by the closed form of
    the merged body.  The wheel-pair formula applied to anything else
    no longer measures an area, so such points are flagged off-domain
    and only ever reported for runs that found nothing better.
    """
    for candidate in (pts, _merged_distinct(pts)):
        if candidate is None or len(candidate) < 4:
            continue
        try:
            vs = validate_vertex_set(candidate, tol=1e-6)
            objective = pyramid_objective(vs)
        except (ValidationError, ValueError):
            continue
        return objective, 2.0 * math.pi - (math.pi / 3.0) * objective, candidate is pts, True
    chords = np.linalg.norm(pts[1:] - np.roll(pts[1:], -1, axis=0), axis=1)
    phi = 2.0 * np.arcsin(np.clip(chords / 2.0 / _COS30, 0.0, 1.0))
    objective = float(_COS30 * phi.sum())
    return objective, 2.0 * math.pi - (math.pi / 3.0) * objective, False, False


def _gauss_newton(v: np.ndarray, constraints, iters: int = 60) -> np.ndarray | None:
    """Least-squares Newton iteration driving the constraint vector to zero."""
    v = v.copy()
    h = 1e-7
    for _ in range(iters):
        r = constraints(v)
        if float(np.abs(r).max()) <= 1e-13:
            return v
        jac = np.empty((len(r), len(v)))
        for j in range(len(v)):
            vp = v.copy()
            vp[j] += h
            jac[:, j] = (constraints(vp) - r) / h
        step, *_ = np.linalg.lstsq(jac, r, rcond=None)
        v = v - step
    return None


def _project_diagonals(angles: np.ndarray, k: int) -> np.ndarray | None:
    """Restore the base-diagonal equality constraints."""
    return _gauss_newton(angles, lambda v: _base_chords(v, k) ** 2 - 1.0)


def _project_edges(coords: np.ndarray, m: int, edges) -> np.ndarray | None:
    """Restore the unit-distance equalities of the diameter graph."""
    idx = np.array(edges)

    def constraints(v: np.ndarray) -> np.ndarray:
        pts = _coords_to_points(v, m)
        d = pts[idx[:, 0]] - pts[idx[:, 1]]
        return (d * d).sum(axis=1) - 1.0

    return _gauss_newton(coords, constraints)


def _gauge_coords(points: np.ndarray) -> np.ndarray:
    """Rigid-motion-normalized coordinates with 3m - 6 free entries."""
    pts = points - points[0]
    e1 = pts[1]
    n1 = np.linalg.norm(e1)
    if n1 < 1e-9:
        raise InfeasibleStart("first two start points coincide")
    e1 = e1 / n1
    helper = pts[2] - (pts[2] @ e1) * e1
    n2 = np.linalg.norm(helper)
    if n2 < 1e-9:
        # collinear start; any frame orthogonal to e1 works
        helper = np.eye(3)[int(np.argmin(np.abs(e1)))]
        helper = helper - (helper @ e1) * e1
        n2 = np.linalg.norm(helper)
    e2 = helper / n2
    e3 = np.cross(e1, e2)
    frame = np.stack((e1, e2, e3), axis=1)
    local = pts @ frame
    coords = [local[1, 0], local[2, 0], local[2, 1]]
    for i in range(3, len(pts)):
        coords.extend(local[i])
    return np.array(coords)


def _coords_to_points(coords: np.ndarray, m: int) -> np.ndarray:
    pts = np.zeros((m, 3))
    pts[1, 0] = coords[0]
    pts[2, 0] = coords[1]
    pts[2, 1] = coords[2]
    for i in range(3, m):
        pts[i] = coords[3 * i - 6 : 3 * i - 3]
    return pts


def _soft_f(c_retained: float, c_smoothed: float) -> float:
    y = 2.0 * math.asin(min(max(c_smoothed / 2.0, 0.0), 1.0))
    cos_half = math.cos(y / 2.0)
    arg = min(max(c_retained / 2.0, 0.0) / cos_half, 1.0)
    return y * cos_half * 2.0 * math.asin(arg)


def _general_soft_objective(coords: np.ndarray, m: int, pairs) -> float:
    pts = _coords_to_points(coords, m)
    total = 0.0
    for e, e_dual in pairs:
        c1 = float(np.linalg.norm(pts[e[0]] - pts[e[1]]))
        c2 = float(np.linalg.norm(pts[e_dual[0]] - pts[e_dual[1]]))
        total += max(_soft_f(c1, c2), _soft_f(c2, c1))
    return total


def _general_penalty(coords: np.ndarray, m: int, edges, non_edges) -> float:
    pts = _coords_to_points(coords, m)
    total = 0.0
    for i, j in edges:
        d2 = float(((pts[i] - pts[j]) ** 2).sum())
        total += (d2 - 1.0) ** 2
    for i, j in non_edges:
        d2 = float(((pts[i] - pts[j]) ** 2).sum())
        total += max(0.0, d2 - 1.0) ** 2
    return total


def _general_residual(coords: np.ndarray, m: int, edges, non_edges) -> float:
    pts = _coords_to_points(coords, m)
    res = 0.0
    for i, j in edges:
        res = max(res, abs(float(np.linalg.norm(pts[i] - pts[j])) - 1.0))
    for i, j in non_edges:
        res = max(res, float(np.linalg.norm(pts[i] - pts[j])) - 1.0)
    return res


def _evaluate_general(pts: np.ndarray, pairs) -> tuple[float, float, bool, bool]:
    """General-mode counterpart of _evaluate_pyramid, same return shape."""
    for candidate in (pts, _merged_distinct(pts)):
        if candidate is None or len(candidate) < 4:
            continue
        try:
            vs = validate_vertex_set(candidate, tol=1e-6)
            area = meissner_area(build_meissner(vs))
        except (ValidationError, ValueError):
            continue
        return 2.0 * math.pi - area, area, candidate is pts, True
    total = 0.0
    for e, e_dual in pairs:
        c1 = float(np.linalg.norm(pts[e[0]] - pts[e[1]]))
        c2 = float(np.linalg.norm(pts[e_dual[0]] - pts[e_dual[1]]))
        total += max(_soft_f(c1, c2), _soft_f(c2, c1))
    return total, 2.0 * math.pi - total, False, False


_Best = tuple[float, float, bool, np.ndarray, float]


def _penalty_loop(x, objective, penalty, residual, evaluate, project=None) -> tuple[np.ndarray, int, tuple[float, ...], _Best | None]:
    """Nelder-Mead rounds with a tenfold penalty ramp; keeps the best iterate.

    Nelder-Mead can tunnel through an infeasible valley into a spurious
    branch of the constraint set where the soft objective stops meaning
    anything, so the final simplex point is never trusted blindly.
    Round results are restored to the equality manifold by `project`
    when available, then scored by `evaluate`, which rejects off-domain
    points; the best accepted iterate (the start competes too) is
    returned as (objective, area, validated, x, residual).
    """
    mu = 1e2
    trajectory: list[float] = []
    rounds = 0
    improved_at = 0
    best: _Best | None = None

    def consider(v: np.ndarray, r: float) -> bool:
        nonlocal best
        if r > FEASIBILITY_TOL:
            return False
        obj, area, validated, on_domain = evaluate(v)
        if on_domain and (best is None or obj > best[0] + 1e-12):
            best = (obj, area, validated, v.copy(), r)
            return True
        return False

    consider(x, residual(x))
    for _ in range(_MAX_ROUNDS):
        rounds += 1
        result = minimize(
            lambda v: -objective(v) + mu * penalty(v),
            x,
            method="Nelder-Mead",
            options={
                "maxfev": 600 * len(x),
                "xatol": 1e-11,
                "fatol": 1e-13,
                "adaptive": True,
                "initial_simplex": _simplex(x, 0.05),
            },
        )
        x = result.x
        if project is not None:
            restored = project(x)
            if restored is not None:
                x = restored
        r = residual(x)
        if consider(x, r):
            improved_at = rounds
        trajectory.append(best[0] if best is not None else -math.inf)
        # ramp to full stiffness first, then keep restarting the simplex
        # until progress stalls
        if mu >= 1e8 and r <= FEASIBILITY_TOL and rounds - improved_at >= _STALL_ROUNDS:
            break
        mu = min(mu * 10.0, 1e8)
    return x, rounds, tuple(trajectory), best


def _simplex(x: np.ndarray, scale: float) -> np.ndarray:
    simplex = np.tile(x, (len(x) + 1, 1))
    for i in range(len(x)):
        simplex[i + 1, i] += scale
    return simplex


def _assemble_report(records, trajectories, points) -> OptimizationReport:
    order = sorted(
        range(len(records)),
        key=lambda i: (records[i].converged, records[i].objective),
        reverse=True,
    )
    best = order[0]
    rec = records[best]
    return OptimizationReport(
        best_objective=rec.objective,
        best_area=rec.area,
        best_volume=rec.area / 2.0 - math.pi / 3.0,
        best_points=points[best],
        best_residual=rec.residual,
        records=tuple(records),
        trajectory=trajectories[best],
    )


def _wheel_hub(graph: DiameterGraph) -> int:
    degrees = graph.degrees()
    m = graph.m
    hubs = [i for i, d in enumerate(degrees) if d == m - 1]
    if not hubs:
        raise NotAWheel("no vertex is adjacent to all others")
    hub = hubs[0]
    rest = [i for i in range(m) if i != hub]
    if any(degrees[i] != 3 for i in rest):
        raise NotAWheel("base vertices must have degree 3")
    adj = graph.adjacency()
    base_adj = {i: sorted((adj[i] - {hub})) for i in rest}
    if any(len(v) != 2 for v in base_adj.values()):
        raise NotAWheel("base vertices must have exactly two base neighbors")
    # base must be one single cycle
    start = rest[0]
    prev, cur = None, start
    visited = 0
    while True:
        visited += 1
        a, b = base_adj[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        if cur == start:
            break
        if visited > m:
            raise NotAWheel("base neighbors do not close a cycle")
    if visited != m - 1:
        raise NotAWheel("base splits into more than one cycle")
    return hub
