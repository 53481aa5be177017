"""Watertight triangle meshes of Meissner and Reuleaux polyhedra.

Every patch is sampled on a structured grid with dyadic parameters, and
neighboring patches evaluate their shared boundary curves through the
same expressions on the same floats, so boundary vertices agree bitwise
and deduplication closes the mesh exactly.  Grid corners that coincide
with polytope vertices are snapped to the vertex coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GeometryError
from .polytope import (
    Arc,
    DualEdgePair,
    MeissnerPolyhedron,
    VertexSet,
    build_diameter_graph,
    face_cycles,
)

__all__ = [
    "TriangleMesh",
    "tessellate",
    "tessellate_reuleaux",
    "mesh_area",
    "euler_characteristic",
    "write_mesh",
    "unit_sphere_mesh",
]


@dataclass(frozen=True, slots=True)
class TriangleMesh:
    vertices: np.ndarray  # (V, 3)
    faces: np.ndarray  # (F, 3) vertex indices
    group_names: tuple[str, ...]
    face_groups: np.ndarray  # (F,) index into group_names


class _Builder:
    def __init__(self) -> None:
        self._index: dict[tuple[float, float, float], int] = {}
        self.vertices: list[np.ndarray] = []
        self.faces: list[tuple[int, int, int]] = []
        self.group_names: list[str] = []
        self.face_groups: list[int] = []

    def group(self, name: str) -> None:
        self.group_names.append(name)

    def vertex(self, p: np.ndarray) -> int:
        key = (round(float(p[0]), 12), round(float(p[1]), 12), round(float(p[2]), 12))
        idx = self._index.get(key)
        if idx is None:
            idx = len(self.vertices)
            self._index[key] = idx
            self.vertices.append(np.asarray(p, dtype=float))
        return idx

    def triangle(self, a: int, b: int, c: int, outward_ref: np.ndarray) -> None:
        """Add triangle (a, b, c) wound so its normal points away from outward_ref."""
        if a == b or b == c or a == c:
            return
        pa, pb, pc = self.vertices[a], self.vertices[b], self.vertices[c]
        normal = np.cross(pb - pa, pc - pa)
        centroid = (pa + pb + pc) / 3.0
        if float(normal @ (centroid - outward_ref)) < 0.0:
            b, c = c, b
        self.faces.append((a, b, c))
        self.face_groups.append(len(self.group_names) - 1)

    def build(self) -> TriangleMesh:
        return TriangleMesh(
            np.array(self.vertices),
            np.array(self.faces, dtype=np.int64),
            tuple(self.group_names),
            np.array(self.face_groups, dtype=np.int64),
        )


def _udir(p: np.ndarray, origin: np.ndarray) -> np.ndarray:
    d = p - origin
    return d / np.linalg.norm(d)


def _slerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    """Great-circle interpolation of unit vectors.

    Exactly reproduces the endpoints at t = 0 and t = 1, and evaluates
    symmetrically: _slerp(a, b, t) and _slerp(b, a, 1 - t) give bitwise
    equal results, which the watertight gluing relies on.
    """
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    cross = np.cross(a, b)
    omega = math.atan2(float(np.linalg.norm(cross)), float(a @ b))
    if omega < 1e-12:
        return a
    s = math.sin(omega)
    return (math.sin((1.0 - t) * omega) * a + math.sin(t * omega) * b) / s


def tessellate(poly: MeissnerPolyhedron, refinement: int) -> TriangleMesh:
    """Triangulate the Meissner surface at grid resolution 2**refinement.

    Groups are named face_<vertex>, wedge_<pair> and spindle_<pair>.
    """
    n = _grid_size(refinement)
    vs = poly.vertices
    builder = _Builder()
    _face_patches(builder, vs, n)
    for i in range(len(poly.pairs)):
        retained = poly.retained_edge(i)
        smoothed = poly.smoothed_edge(i)
        arc = poly.retained_arc(i)
        builder.group(f"wedge_{i}")
        for s_idx in smoothed:
            _wedge_half(builder, vs.points, retained, s_idx, arc, n)
        builder.group(f"spindle_{i}")
        _spindle_patch(builder, vs.points, retained, smoothed, arc, n)
    return builder.build()


def tessellate_reuleaux(
    vs: VertexSet, pairs: tuple[DualEdgePair, ...], refinement: int
) -> TriangleMesh:
    """Triangulate the unsmoothed ball polytope: faces plus both wedges per pair."""
    n = _grid_size(refinement)
    builder = _Builder()
    _face_patches(builder, vs, n)
    for i, pair in enumerate(pairs):
        builder.group(f"wedge_{i}")
        for s_idx in pair.edge_dual:
            _wedge_half(builder, vs.points, pair.edge, s_idx, pair.geometry.arc, n)
        builder.group(f"wedge_dual_{i}")
        for s_idx in pair.edge:
            _wedge_half(builder, vs.points, pair.edge_dual, s_idx, pair.geometry.arc_dual, n)
    return builder.build()


def mesh_area(mesh: TriangleMesh) -> float:
    """Total area of the triangles."""
    v = mesh.vertices
    a, b, c = v[mesh.faces[:, 0]], v[mesh.faces[:, 1]], v[mesh.faces[:, 2]]
    cross = np.cross(b - a, c - a)
    return float(0.5 * np.linalg.norm(cross, axis=1).sum())


def euler_characteristic(mesh: TriangleMesh) -> int:
    """V - E + F with edges counted once per undirected pair."""
    f = mesh.faces
    edges = np.concatenate([f[:, (0, 1)], f[:, (1, 2)], f[:, (2, 0)]])
    edges = np.sort(edges, axis=1)
    unique = np.unique(edges, axis=0)
    return int(len(mesh.vertices) - len(unique) + len(f))


def write_mesh(mesh: TriangleMesh, path: str | Path, fmt: str = "obj") -> None:
    """Write ASCII OBJ (with group markers) or PLY."""
    path = Path(path)
    if fmt == "obj":
        lines = []
        for p in mesh.vertices:
            lines.append(f"v {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}")
        current = -1
        for face, grp in zip(mesh.faces, mesh.face_groups):
            if grp != current:
                lines.append(f"g {mesh.group_names[grp]}")
                current = int(grp)
            lines.append(f"f {face[0] + 1} {face[1] + 1} {face[2] + 1}")
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "ply":
        lines = [
            "ply",
            "format ascii 1.0",
            f"element vertex {len(mesh.vertices)}",
            "property double x",
            "property double y",
            "property double z",
            f"element face {len(mesh.faces)}",
            "property list uchar int vertex_indices",
            "end_header",
        ]
        for p in mesh.vertices:
            lines.append(f"{p[0]:.17g} {p[1]:.17g} {p[2]:.17g}")
        for face in mesh.faces:
            lines.append(f"3 {face[0]} {face[1]} {face[2]}")
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown mesh format {fmt!r}")


def unit_sphere_mesh(depth: int) -> TriangleMesh:
    """Icosahedron subdivided depth times with midpoints pushed to the sphere.

    Calibration fixture: its area converges to 4*pi from below.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    raw = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]
    verts = [np.array(p, dtype=float) / math.sqrt(1.0 + phi * phi) for p in raw]
    tris = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    builder = _Builder()
    builder.group("sphere")
    ids = [builder.vertex(v) for v in verts]

    def subdivide(a: np.ndarray, b: np.ndarray, c: np.ndarray, level: int) -> None:
        if level == 0:
            ia, ib, ic = builder.vertex(a), builder.vertex(b), builder.vertex(c)
            builder.triangle(ia, ib, ic, np.zeros(3))
            return
        ab = a + b
        bc = b + c
        ca = c + a
        ab /= np.linalg.norm(ab)
        bc /= np.linalg.norm(bc)
        ca /= np.linalg.norm(ca)
        subdivide(a, ab, ca, level - 1)
        subdivide(ab, b, bc, level - 1)
        subdivide(ca, bc, c, level - 1)
        subdivide(ab, bc, ca, level - 1)

    for ia, ib, ic in tris:
        subdivide(verts[ia], verts[ib], verts[ic], depth)
    _ = ids
    return builder.build()


def _grid_size(refinement: int) -> int:
    if not 0 <= refinement <= 8:
        raise ValueError(f"refinement {refinement} outside [0, 8]")
    return 1 << refinement


def _face_patches(builder: _Builder, vs: VertexSet, n: int) -> None:
    pts = vs.points
    cycles = face_cycles(vs, build_diameter_graph(vs))
    for i, cycle in enumerate(cycles):
        builder.group(f"face_{i}")
        x = pts[i]
        units = [_udir(pts[v], x) for v in cycle]
        centroid = np.add.reduce(units)
        norm = float(np.linalg.norm(centroid))
        if norm < 1e-9:
            raise GeometryError(f"face {i} has no interior point")
        centroid = centroid / norm
        for j in range(len(cycle)):
            b_unit, c_unit = units[j], units[(j + 1) % len(cycle)]
            b_vid = builder.vertex(pts[cycle[j]])
            c_vid = builder.vertex(pts[cycle[(j + 1) % len(cycle)]])
            _geodesic_triangle(builder, x, centroid, b_unit, c_unit, b_vid, c_vid, n)


def _geodesic_triangle(
    builder: _Builder,
    x: np.ndarray,
    apex: np.ndarray,
    b_unit: np.ndarray,
    c_unit: np.ndarray,
    b_vid: int,
    c_vid: int,
    n: int,
) -> None:
    """Fan triangle of a spherical face, subdivided on a triangular grid.

    Row i runs from slerp(apex, b, i/n) to slerp(apex, c, i/n); the last
    row samples the polygon edge itself, with its two corners snapped to
    the supplied vertex ids.
    """
    rows: list[list[int]] = []
    for i in range(n + 1):
        row: list[int] = []
        left = _slerp(apex, b_unit, i / n)
        right = _slerp(apex, c_unit, i / n)
        for l in range(i + 1):
            if i == n and l == 0:
                row.append(b_vid)
            elif i == n and l == n:
                row.append(c_vid)
            elif i == 0:
                row.append(builder.vertex(x + apex))
            else:
                row.append(builder.vertex(x + _slerp(left, right, l / i)))
        rows.append(row)
    for i in range(1, n + 1):
        for l in range(i):
            builder.triangle(rows[i][l], rows[i][l + 1], rows[i - 1][l], x)
            if l < i - 1:
                builder.triangle(rows[i - 1][l], rows[i][l + 1], rows[i - 1][l + 1], x)


def _wedge_half(
    builder: _Builder,
    pts: np.ndarray,
    retained: tuple[int, int],
    sphere_idx: int,
    arc: Arc,
    n: int,
) -> None:
    """Lune between the geodesic and the edge arc on one supporting sphere.

    Row t blends from the geodesic (t = 0) to the arc (t = n); the arc
    row reuses the arc's own points so both halves emit identical floats.
    """
    s_c = pts[sphere_idx]
    p_idx, q_idx = retained
    gp = _udir(pts[p_idx], s_c)
    gq = _udir(pts[q_idx], s_c)
    grid: list[list[int]] = []
    for t in range(n + 1):
        row: list[int] = []
        for l in range(n + 1):
            if l == 0:
                row.append(builder.vertex(pts[p_idx]))
            elif l == n:
                row.append(builder.vertex(pts[q_idx]))
            elif t == n:
                row.append(builder.vertex(arc.point(arc.sweep * (l / n))))
            else:
                g_l = _slerp(gp, gq, l / n)
                if t == 0:
                    row.append(builder.vertex(s_c + g_l))
                else:
                    a_l = _udir(arc.point(arc.sweep * (l / n)), s_c)
                    row.append(builder.vertex(s_c + _slerp(g_l, a_l, t / n)))
        grid.append(row)
    _grid_triangles(builder, grid, lambda t: s_c)


def _spindle_patch(
    builder: _Builder,
    pts: np.ndarray,
    retained: tuple[int, int],
    smoothed: tuple[int, int],
    arc: Arc,
    n: int,
) -> None:
    """Surface swept by geodesic profiles as the ball center runs along the arc.

    For each center c on the retained edge's arc, the profile is the
    geodesic from one smoothed-edge endpoint to the other on the unit
    sphere around c; the sweep pinches at those two endpoints.
    """
    p_idx, q_idx = retained
    sp, sq = pts[smoothed[0]], pts[smoothed[1]]
    centers: list[np.ndarray] = []
    grid: list[list[int]] = []
    for t in range(n + 1):
        if t == 0:
            c_t = pts[p_idx]
        elif t == n:
            c_t = pts[q_idx]
        else:
            c_t = arc.point(arc.sweep * (t / n))
        centers.append(c_t)
        row: list[int] = []
        d0 = _udir(sp, c_t)
        d1 = _udir(sq, c_t)
        for s in range(n + 1):
            if s == 0:
                row.append(builder.vertex(sp))
            elif s == n:
                row.append(builder.vertex(sq))
            else:
                row.append(builder.vertex(c_t + _slerp(d0, d1, s / n)))
        grid.append(row)
    _grid_triangles(builder, grid, lambda t: centers[t])


def _grid_triangles(builder: _Builder, grid: list[list[int]], ref_for_row) -> None:
    rows = len(grid) - 1
    cols = len(grid[0]) - 1
    for t in range(rows):
        ref = ref_for_row(t)
        for l in range(cols):
            builder.triangle(grid[t][l], grid[t + 1][l], grid[t + 1][l + 1], ref)
            builder.triangle(grid[t][l], grid[t + 1][l + 1], grid[t][l + 1], ref)
