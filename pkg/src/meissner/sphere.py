"""Closed-form spherical trigonometry for unit-ball intersection bodies.

All angles are radians.  Edge arcs are angular measures of chords of
length at most one, so they live in [0, pi/3]; dihedral angles live in
[0, arccos(1/3)].  Arguments of arcsin/arccos may spill out of [-1, 1]
by floating-point noise; spill within CLAMP_TOL is clamped, anything
larger raises GeometryError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DiameterViolation, GeometryError, NoIntersection

__all__ = [
    "CLAMP_TOL",
    "EDGE_ARC_MAX",
    "DIHEDRAL_MAX",
    "PairLengths",
    "chord_to_arc",
    "dihedral_angle",
    "midpoint_distance",
    "circle_intersection_angle",
    "wedge_angle",
    "rect_area",
    "wedge_area",
    "spindle_area",
    "f_pair",
    "f_partial_x",
    "geodesic_polygon_area",
    "arc_polygon_area",
]

CLAMP_TOL = 1e-9
EDGE_ARC_MAX = math.pi / 3
DIHEDRAL_MAX = math.acos(1.0 / 3.0)


def _clamped(value: float, tol: float = CLAMP_TOL) -> float:
    if value > 1.0 + tol or value < -1.0 - tol:
        raise GeometryError(f"trig argument {value!r} outside [-1, 1]")
    return min(1.0, max(-1.0, value))


@dataclass(frozen=True, slots=True)
class PairLengths:
    """Arc lengths (theta, theta_dual) of a dual edge pair.

    By convention the first entry is the retained (wedge) edge and the
    second the smoothed (spindle) edge whenever a smoothing is in play.
    """

    theta: float
    theta_dual: float

    def __post_init__(self) -> None:
        for value in (self.theta, self.theta_dual):
            if not -CLAMP_TOL <= value <= EDGE_ARC_MAX + CLAMP_TOL:
                raise GeometryError(f"edge arc {value!r} outside [0, pi/3]")
        s = math.sin(self.theta / 2) ** 2 + math.sin(self.theta_dual / 2) ** 2
        if s > 1.0:
            raise GeometryError(f"inadmissible pair {self!r}")

    def swapped(self) -> "PairLengths":
        return PairLengths(self.theta_dual, self.theta)


def chord_to_arc(chord: float, tol: float = CLAMP_TOL) -> float:
    """Angular measure 2*arcsin(chord/2) of a chord of a unit-radius arc."""
    if chord > 1.0 + tol:
        raise DiameterViolation(f"chord {chord!r} exceeds one")
    if chord < 0.0:
        if chord < -tol:
            raise GeometryError(f"negative chord {chord!r}")
        chord = 0.0
    return 2.0 * math.asin(min(chord, 1.0) / 2.0)


def dihedral_angle(lengths: PairLengths) -> float:
    """Dihedral angle phi(e) of the first edge: sin(phi/2) = sin(theta'/2)/cos(theta/2)."""
    s = math.sin(lengths.theta_dual / 2) / math.cos(lengths.theta / 2)
    return 2.0 * math.asin(_clamped(s))


def midpoint_distance(lengths: PairLengths) -> float:
    """Distance cos(phi(e)/2)*cos(theta(e)/2) between the midpoints of a dual pair.

    Symmetric in the two edges even though the formula is not visibly so.
    """
    phi = dihedral_angle(lengths)
    return math.cos(phi / 2) * math.cos(lengths.theta / 2)


def circle_intersection_angle(theta1: float, theta2: float, separation: float) -> float:
    """Angle alpha at the first circle's center in a spherical circle crossing.

    Solves cos(separation) = cos(theta1)cos(theta2) + sin(theta1)sin(theta2)cos(alpha)
    for alpha, where theta1, theta2 are the spherical radii of two circles
    on the unit sphere and separation is the angle between their centers.
    Raises NoIntersection when the circles do not meet.
    """
    for value in (theta1, theta2):
        if not -CLAMP_TOL <= value <= math.pi / 2 + CLAMP_TOL:
            raise GeometryError(f"spherical radius {value!r} outside [0, pi/2]")
    num = math.cos(separation) - math.cos(theta1) * math.cos(theta2)
    denom = math.sin(theta1) * math.sin(theta2)
    if denom < 1e-15:
        # one circle degenerates to a point; tangency is the only contact
        if abs(num) <= 1e-12:
            return 0.0
        raise NoIntersection(f"degenerate circle misses: radii {theta1!r}, {theta2!r}")
    c = num / denom
    if c > 1.0 + CLAMP_TOL or c < -1.0 - CLAMP_TOL:
        raise NoIntersection(
            f"circles of radii {theta1!r}, {theta2!r} at separation {separation!r} do not meet"
        )
    return math.acos(_clamped(c))


def wedge_angle(lengths: PairLengths) -> float:
    """Crossing angle alpha(e): cos(alpha)*cos(theta'/2) = cos(phi(e)/2).

    Symmetric under swapping the pair.  Computed through the equivalent
    alpha = arcsin(tan(theta/2)*tan(theta'/2)), which keeps absolute
    precision when alpha is small; the arccos form loses half the digits
    there.
    """
    t = math.tan(lengths.theta / 2) * math.tan(lengths.theta_dual / 2)
    return math.asin(_clamped(t))


def rect_area(theta: float, theta_dual: float, tol: float = CLAMP_TOL) -> float:
    """Area 4*arcsin(tan(theta/2)*tan(theta_dual/2)) of a spherical rectangle R(theta, theta')."""
    for value in (theta, theta_dual):
        if not -tol <= value < math.pi:
            raise GeometryError(f"rectangle parameter {value!r} outside [0, pi)")
    t = math.tan(theta / 2) * math.tan(theta_dual / 2)
    return 4.0 * math.asin(_clamped(t, tol))


def wedge_area(lengths: PairLengths) -> float:
    """Area of the wedge W(e) left uncovered at the retained edge.

    |W(e)| = 4*alpha(e) - 2*sin(theta(e')/2)*phi(e').
    """
    phi_dual = dihedral_angle(lengths.swapped())
    return 4.0 * wedge_angle(lengths) - 2.0 * math.sin(lengths.theta_dual / 2) * phi_dual


def spindle_area(theta: float, phi: float) -> float:
    """Area 2*phi*(sin(theta/2) - (theta/2)*cos(theta/2)) of a spindle patch.

    theta is the arc of the smoothed edge, phi the dihedral angle swept by
    the rotation of its profile.
    """
    if not -CLAMP_TOL <= theta <= EDGE_ARC_MAX + CLAMP_TOL:
        raise GeometryError(f"spindle arc {theta!r} outside [0, pi/3]")
    if phi < -CLAMP_TOL:
        raise GeometryError(f"negative spindle sweep {phi!r}")
    return 2.0 * phi * (math.sin(theta / 2) - (theta / 2) * math.cos(theta / 2))


def f_pair(lengths: PairLengths) -> float:
    """Surface area lost by smoothing the second edge of a dual pair.

    f(x, y) = 2*y*cos(y/2)*arcsin(sin(x/2)/cos(y/2)) with x the retained
    arc and y the smoothed arc; equivalently y*cos(y/2)*phi(e'), and also
    rect_area(x, y) - wedge_area - spindle_area.  The Meissner surface
    area is 2*pi minus the sum of f over all dual pairs.
    """
    phi_dual = dihedral_angle(lengths.swapped())
    return lengths.theta_dual * math.cos(lengths.theta_dual / 2) * phi_dual


def f_partial_x(lengths: PairLengths) -> float:
    """Partial derivative of f_pair in its first argument.

    df/dx = y*cos(x/2)*cos(y/2) / sqrt(1 - sin^2(x/2) - sin^2(y/2)).
    """
    x, y = lengths.theta, lengths.theta_dual
    rad = 1.0 - math.sin(x / 2) ** 2 - math.sin(y / 2) ** 2
    if rad < 1e-12:
        raise GeometryError(f"pair {lengths!r} on the admissible boundary")
    return y * math.cos(x / 2) * math.cos(y / 2) / math.sqrt(rad)


def geodesic_polygon_area(angles: list[float] | tuple[float, ...], tol: float = 1e-9) -> float:
    """Spherical excess sum(angles) - (k - 2)*pi of a geodesic polygon.

    angles are the interior angles; k = len(angles) must be at least 3.
    """
    k = len(angles)
    if k < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {k}")
    area = math.fsum(angles) - (k - 2) * math.pi
    if area < -tol:
        raise GeometryError(f"negative polygon area {area!r}")
    return max(area, 0.0)


def arc_polygon_area(
    turning_angles: list[float] | tuple[float, ...],
    arcs: list[tuple[float, float]] | tuple[tuple[float, float], ...],
    tol: float = 1e-9,
) -> float:
    """Gauss-Bonnet area of a spherical region bounded by circle arcs.

    turning_angles are the exterior angles at the corners; arcs is a list
    of (euclidean_radius, arc_length) pairs, one per boundary arc.  A
    circle of euclidean radius r on the unit sphere has geodesic
    curvature sqrt(1 - r^2)/r, so the area is
    2*pi - sum(turning) - sum(curvature * length).
    """
    total = 2.0 * math.pi - math.fsum(turning_angles)
    for radius, length in arcs:
        if radius <= 0.0 or radius > 1.0 + CLAMP_TOL:
            raise GeometryError(f"arc radius {radius!r} outside (0, 1]")
        radius = min(radius, 1.0)
        total -= math.sqrt(max(1.0 - radius * radius, 0.0)) / radius * length
    if total < -tol:
        raise GeometryError(f"negative region area {total!r}")
    return max(total, 0.0)
