"""Ball polytopes over extremal point sets and their Meissner smoothings.

An extremal set is a diameter-one point set of m points realizing
exactly 2m - 2 unit distances.  Its ball polytope has m - 1 dual edge
pairs, found as the diagonals of 4-cycles of the diameter graph; each
pair must have one of its two edges smoothed to produce a body of
constant width one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    DiameterViolation,
    FaceCycleError,
    GeometryError,
    NotExtremal,
    TooManyPairs,
    WrongPairCount,
)
from .sphere import (
    PairLengths,
    chord_to_arc,
    dihedral_angle,
    f_pair,
    geodesic_polygon_area,
    rect_area,
    spindle_area,
    wedge_angle,
    wedge_area,
)

__all__ = [
    "DEFAULT_TOL",
    "VertexSet",
    "DiameterGraph",
    "Arc",
    "DualPairGeometry",
    "DualEdgePair",
    "SmoothingChoice",
    "MeissnerPolyhedron",
    "SurfacePatch",
    "SurfaceDecomposition",
    "validate_vertex_set",
    "build_diameter_graph",
    "dual_pair_indices",
    "find_dual_pairs",
    "optimal_smoothing",
    "enumerate_smoothings",
    "build_meissner",
    "meissner_area",
    "meissner_volume",
    "reuleaux_area",
    "surface_decomposition",
    "direction_sphere_partition",
    "face_cycles",
]

DEFAULT_TOL = 1e-9

Edge = tuple[int, int]


@dataclass(frozen=True, slots=True)
class VertexSet:
    """A validated extremal point set of diameter one."""

    points: np.ndarray
    tol: float
    diameter_count: int
    max_distance: float

    @property
    def m(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True, slots=True)
class DiameterGraph:
    """Unit-distance graph of a vertex set; edges are sorted index pairs."""

    m: int
    edges: tuple[Edge, ...]

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.m)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.m
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg


@dataclass(frozen=True, slots=True)
class Arc:
    """Circular arc center + radius*(cos(t)*u + sin(t)*v) for t in [0, sweep]."""

    center: np.ndarray
    radius: float
    u: np.ndarray
    v: np.ndarray
    sweep: float

    def point(self, t: float | np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        offset = np.multiply.outer(np.cos(t), self.u) + np.multiply.outer(np.sin(t), self.v)
        return self.center + self.radius * offset

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.point(0.0), self.point(self.sweep)


@dataclass(frozen=True, slots=True)
class DualPairGeometry:
    """Derived angles and arcs of one dual edge pair."""

    lengths: PairLengths
    phi: float
    phi_dual: float
    alpha: float
    midpoint_distance: float
    arc: Arc
    arc_dual: Arc


@dataclass(frozen=True, slots=True)
class DualEdgePair:
    edge: Edge
    edge_dual: Edge
    geometry: DualPairGeometry


@dataclass(frozen=True, slots=True)
class SmoothingChoice:
    """One boolean per dual pair; True smooths the pair's second edge."""

    bits: tuple[bool, ...]


@dataclass(frozen=True, slots=True)
class MeissnerPolyhedron:
    vertices: VertexSet
    pairs: tuple[DualEdgePair, ...]
    choice: SmoothingChoice

    def retained_lengths(self, i: int) -> PairLengths:
        """Pair lengths oriented (retained, smoothed) for pair i."""
        lengths = self.pairs[i].geometry.lengths
        return lengths if self.choice.bits[i] else lengths.swapped()

    def retained_arc(self, i: int) -> Arc:
        geom = self.pairs[i].geometry
        return geom.arc if self.choice.bits[i] else geom.arc_dual

    def retained_edge(self, i: int) -> Edge:
        pair = self.pairs[i]
        return pair.edge if self.choice.bits[i] else pair.edge_dual

    def smoothed_edge(self, i: int) -> Edge:
        pair = self.pairs[i]
        return pair.edge_dual if self.choice.bits[i] else pair.edge


@dataclass(frozen=True, slots=True)
class SurfacePatch:
    kind: str  # 'face' | 'wedge' | 'spindle'
    index: int  # vertex index for faces, pair index otherwise
    area: float


@dataclass(frozen=True, slots=True)
class SurfaceDecomposition:
    patches: tuple[SurfacePatch, ...]
    total: float
    closed_form: float


def validate_vertex_set(points: np.ndarray, tol: float = DEFAULT_TOL) -> VertexSet:
    """Check diameter one and the extremal count of 2m - 2 unit distances."""
    pts = np.array(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"expected an (m, 3) array, got shape {pts.shape}")
    m = pts.shape[0]
    if m < 4:
        raise ValueError(f"at least four points required, got {m}")
    dist = _pairwise(pts)
    iu = np.triu_indices(m, 1)
    upper = dist[iu]
    max_distance = float(upper.max())
    if max_distance > 1.0 + tol:
        raise DiameterViolation(f"max pairwise distance {max_distance!r} exceeds one")
    count = int(np.count_nonzero(np.abs(upper - 1.0) <= tol))
    if count != 2 * m - 2:
        raise NotExtremal(f"{count} unit distances, an extremal set of {m} points needs {2 * m - 2}")
    pts.setflags(write=False)
    return VertexSet(pts, tol, count, max_distance)


def build_diameter_graph(vs: VertexSet) -> DiameterGraph:
    """Edges of the unit-distance graph, sorted lexicographically."""
    dist = _pairwise(vs.points)
    edges = [
        (i, j)
        for i in range(vs.m)
        for j in range(i + 1, vs.m)
        if abs(dist[i, j] - 1.0) <= vs.tol
    ]
    if len(edges) != 2 * vs.m - 2:
        raise NotExtremal(f"{len(edges)} unit distances, expected {2 * vs.m - 2}")
    return DiameterGraph(vs.m, tuple(edges))


def dual_pair_indices(graph: DiameterGraph) -> tuple[tuple[Edge, Edge], ...]:
    """Dual edge pairs as the diagonal pairs of 4-cycles of the graph.

    Purely combinatorial; raises WrongPairCount unless exactly m - 1
    distinct pairs are found.
    """
    adj = graph.adjacency()
    found: set[tuple[Edge, Edge]] = set()
    for p in range(graph.m):
        for q in range(p + 1, graph.m):
            common = sorted(adj[p] & adj[q])
            for r, s in combinations(common, 2):
                d1, d2 = (p, q), (r, s)
                found.add((min(d1, d2), max(d1, d2)))
    if len(found) != graph.m - 1:
        raise WrongPairCount(f"{len(found)} dual pairs, expected {graph.m - 1}")
    return tuple(sorted(found))


def find_dual_pairs(graph: DiameterGraph, vs: VertexSet) -> tuple[DualEdgePair, ...]:
    """Dual pairs with their geometry filled in from the coordinates."""
    return tuple(
        DualEdgePair(e, e_dual, _pair_geometry(vs, e, e_dual))
        for e, e_dual in dual_pair_indices(graph)
    )


def optimal_smoothing(pairs: tuple[DualEdgePair, ...]) -> SmoothingChoice:
    """Area-minimizing choice: smooth the longer edge of every pair.

    Ties retain the pair's first edge, which carries the lower vertex
    indices by construction.
    """
    return SmoothingChoice(
        tuple(p.geometry.lengths.theta <= p.geometry.lengths.theta_dual for p in pairs)
    )


def enumerate_smoothings(
    vs: VertexSet, pairs: tuple[DualEdgePair, ...]
) -> list[tuple[SmoothingChoice, float]]:
    """All 2^(m-1) smoothings with their closed-form areas."""
    n = len(pairs)
    if n > 20:
        raise TooManyPairs(f"{n} pairs gives 2^{n} smoothings; refusing beyond 20")
    out = []
    for mask in range(1 << n):
        choice = SmoothingChoice(tuple(bool((mask >> i) & 1) for i in range(n)))
        out.append((choice, meissner_area(MeissnerPolyhedron(vs, pairs, choice))))
    return out


def build_meissner(vs: VertexSet, choice: SmoothingChoice | None = None) -> MeissnerPolyhedron:
    """Full pipeline: graph, dual pairs, then the given or optimal smoothing."""
    pairs = find_dual_pairs(build_diameter_graph(vs), vs)
    if choice is None:
        choice = optimal_smoothing(pairs)
    elif len(choice.bits) != len(pairs):
        raise ValueError(f"{len(choice.bits)} smoothing bits for {len(pairs)} pairs")
    return MeissnerPolyhedron(vs, pairs, choice)


def meissner_area(poly: MeissnerPolyhedron) -> float:
    """Surface area 2*pi - sum of f over the smoothed pairs."""
    return 2.0 * math.pi - math.fsum(
        f_pair(poly.retained_lengths(i)) for i in range(len(poly.pairs))
    )


def meissner_volume(poly: MeissnerPolyhedron) -> float:
    """Volume area/2 - pi/3, the Blaschke identity at constant width one."""
    return meissner_area(poly) / 2.0 - math.pi / 3.0


def reuleaux_area(vs: VertexSet, pairs: tuple[DualEdgePair, ...]) -> float:
    """Surface area of the unsmoothed ball polytope.

    2*pi + sum over pairs of 4*alpha - 2*sin(theta/2)*phi - 2*sin(theta'/2)*phi'.
    """
    terms = []
    for p in pairs:
        g = p.geometry
        terms.append(
            4.0 * g.alpha
            - 2.0 * math.sin(g.lengths.theta / 2) * g.phi
            - 2.0 * math.sin(g.lengths.theta_dual / 2) * g.phi_dual
        )
    return 2.0 * math.pi + math.fsum(terms)


def face_cycles(vs: VertexSet, graph: DiameterGraph) -> list[list[int]]:
    """Neighbors of each vertex in cyclic order around the outward axis."""
    adj = graph.adjacency()
    return [_face_cycle(vs.points, sorted(adj[i]), i) for i in range(vs.m)]


def surface_decomposition(poly: MeissnerPolyhedron) -> SurfaceDecomposition:
    """Per-patch areas: one spherical face per vertex, a wedge and a spindle per pair."""
    vs = poly.vertices
    graph = build_diameter_graph(vs)
    patches: list[SurfacePatch] = []
    for i, cycle in enumerate(face_cycles(vs, graph)):
        angles = _face_interior_angles(vs.points, i, cycle)
        patches.append(SurfacePatch("face", i, geodesic_polygon_area(angles)))
    for i in range(len(poly.pairs)):
        lengths = poly.retained_lengths(i)
        patches.append(SurfacePatch("wedge", i, wedge_area(lengths)))
        phi_smoothed = dihedral_angle(lengths.swapped())
        patches.append(
            SurfacePatch("spindle", i, spindle_area(lengths.theta_dual, phi_smoothed))
        )
    total = math.fsum(p.area for p in patches)
    return SurfaceDecomposition(tuple(patches), total, meissner_area(poly))


def direction_sphere_partition(poly: MeissnerPolyhedron) -> float:
    """Sum of face areas and rectangle areas over the sphere of directions.

    The faces and the rectangles R(theta, theta') of the dual pairs tile
    half the directions once, so the sum must be 2*pi.
    """
    vs = poly.vertices
    graph = build_diameter_graph(vs)
    faces = [
        geodesic_polygon_area(_face_interior_angles(vs.points, i, cycle))
        for i, cycle in enumerate(face_cycles(vs, graph))
    ]
    rects = [
        rect_area(p.geometry.lengths.theta, p.geometry.lengths.theta_dual)
        for p in poly.pairs
    ]
    return math.fsum(faces) + math.fsum(rects)


def _pairwise(pts: np.ndarray) -> np.ndarray:
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _pair_geometry(vs: VertexSet, e: Edge, e_dual: Edge) -> DualPairGeometry:
    pts = vs.points
    x, y = pts[e[0]], pts[e[1]]
    xd, yd = pts[e_dual[0]], pts[e_dual[1]]
    theta = chord_to_arc(float(np.linalg.norm(y - x)), vs.tol)
    theta_dual = chord_to_arc(float(np.linalg.norm(yd - xd)), vs.tol)
    lengths = PairLengths(theta, theta_dual)
    phi = dihedral_angle(lengths)
    phi_dual = dihedral_angle(lengths.swapped())
    alpha = wedge_angle(lengths)
    d_mid = float(np.linalg.norm((x + y) / 2 - (xd + yd) / 2))
    arc = _edge_arc(x, y, xd, yd, vs.tol)
    arc_dual = _edge_arc(xd, yd, x, y, vs.tol)
    return DualPairGeometry(lengths, phi, phi_dual, alpha, d_mid, arc, arc_dual)


def _edge_arc(a: np.ndarray, b: np.ndarray, c1: np.ndarray, c2: np.ndarray, tol: float) -> Arc:
    """Arc from a to b on the circle of points at distance one from c1 and c2."""
    center = (c1 + c2) / 2.0
    axis = c2 - c1
    axis_norm = float(np.linalg.norm(axis))
    if axis_norm < 1e-12:
        raise GeometryError("coincident sphere centers give no circle")
    axis = axis / axis_norm
    ra = a - center
    if abs(float(ra @ axis)) > 1e-6:
        raise GeometryError("arc endpoint off the circle plane")
    radial = ra - (ra @ axis) * axis
    radius = float(np.linalg.norm(radial))
    if radius < 1e-12:
        raise GeometryError("arc endpoint on the circle axis")
    u = radial / radius
    v = np.cross(axis, u)
    rb = b - center
    t = math.atan2(float(rb @ v), float(rb @ u))
    if t < 0.0:
        v = -v
        t = -t
    return Arc(center, radius, u, v, t)


def _face_cycle(pts: np.ndarray, neighbors: list[int], i: int) -> list[int]:
    x = pts[i]
    if len(neighbors) < 3:
        raise FaceCycleError(f"vertex {i} has only {len(neighbors)} neighbors")
    axis = pts[neighbors].mean(axis=0) - x
    norm = float(np.linalg.norm(axis))
    if norm < 1e-9:
        raise FaceCycleError(f"neighbors of vertex {i} have no outward axis")
    axis = axis / norm
    smallest = int(np.argmin(np.abs(axis)))
    t1 = np.cross(axis, np.eye(3)[smallest])
    t1 = t1 / np.linalg.norm(t1)
    t2 = np.cross(axis, t1)
    angles = [
        (math.atan2(float((pts[n] - x) @ t2), float((pts[n] - x) @ t1)), n)
        for n in neighbors
    ]
    angles.sort()
    for (a1, n1), (a2, n2) in zip(angles, angles[1:] + [(angles[0][0] + 2 * math.pi, angles[0][1])]):
        if a2 - a1 < 1e-9:
            raise FaceCycleError(f"neighbors {n1} and {n2} of vertex {i} are angularly coincident")
    return [n for _, n in angles]


def _face_interior_angles(pts: np.ndarray, i: int, cycle: list[int]) -> list[float]:
    x = pts[i]
    units = []
    for n in cycle:
        d = pts[n] - x
        units.append(d / np.linalg.norm(d))
    k = len(units)
    angles = []
    for j in range(k):
        b = units[j]
        prev = units[j - 1]
        nxt = units[(j + 1) % k]
        tp = prev - (prev @ b) * b
        tn = nxt - (nxt @ b) * b
        np_, nn = np.linalg.norm(tp), np.linalg.norm(tn)
        if np_ < 1e-12 or nn < 1e-12:
            raise GeometryError(f"degenerate corner at vertex {i}")
        c = float(tp @ tn) / (np_ * nn)
        angles.append(math.acos(min(1.0, max(-1.0, c))))
    return angles
