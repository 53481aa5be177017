"""Closed-form spherical trigonometry checks."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meissner import (
    DiameterViolation,
    GeometryError,
    NoIntersection,
    PairLengths,
    chord_to_arc,
    dihedral_angle,
    f_pair,
    f_partial_x,
    midpoint_distance,
    rect_area,
    spindle_area,
    wedge_angle,
    wedge_area,
)
from meissner.sphere import (
    arc_polygon_area,
    circle_intersection_angle,
    geodesic_polygon_area,
)

from conftest import (
    ACOS_THIRD,
    CHORD_HALF_ARC,
    F_TETRA_PAIR,
    PI3,
    RECT_TETRA,
    SPINDLE_TETRA,
    WEDGE_TETRA,
)

arc = st.floats(min_value=0.0, max_value=PI3, allow_nan=False)
# strictly interior arcs, so derivative and division formulas stay away
# from the removable singularities at 0
arc_interior = st.floats(min_value=1e-3, max_value=PI3 - 1e-3, allow_nan=False)


def test_chord_to_arc_values():
    assert chord_to_arc(1.0) == pytest.approx(PI3, abs=1e-15)
    assert chord_to_arc(0.5) == pytest.approx(CHORD_HALF_ARC, abs=1e-15)
    assert chord_to_arc(0.0) == 0.0


def test_chord_to_arc_clamping():
    # spill inside the tolerance clamps to pi/3, beyond it raises
    assert chord_to_arc(1.0 + 5e-10) == pytest.approx(PI3, abs=1e-9)
    assert chord_to_arc(-1e-10) == 0.0
    with pytest.raises(DiameterViolation):
        chord_to_arc(1.0 + 2e-9)
    with pytest.raises(GeometryError):
        chord_to_arc(-1e-8)


def test_pair_lengths_range_check():
    PairLengths(0.0, 0.0)
    PairLengths(PI3, PI3)
    with pytest.raises(GeometryError):
        PairLengths(PI3 + 1e-6, 0.1)
    with pytest.raises(GeometryError):
        PairLengths(0.1, -1e-6)


def test_tetrahedron_pair_values():
    lengths = PairLengths(PI3, PI3)
    assert dihedral_angle(lengths) == pytest.approx(ACOS_THIRD, abs=1e-15)
    assert rect_area(PI3, PI3) == pytest.approx(RECT_TETRA, abs=1e-14)
    assert wedge_area(lengths) == pytest.approx(WEDGE_TETRA, abs=1e-14)
    assert spindle_area(PI3, ACOS_THIRD) == pytest.approx(SPINDLE_TETRA, abs=1e-14)
    assert f_pair(lengths) == pytest.approx(F_TETRA_PAIR, abs=1e-14)


@given(arc, arc)
def test_f_equals_rect_minus_wedge_minus_spindle(x, y):
    lengths = PairLengths(x, y)
    phi_dual = dihedral_angle(lengths.swapped())
    direct = f_pair(lengths)
    composed = rect_area(x, y) - wedge_area(lengths) - spindle_area(y, phi_dual)
    assert abs(direct - composed) < 1e-12


@given(arc, arc)
def test_rect_area_is_four_wedge_angles(x, y):
    assert abs(rect_area(x, y) - 4.0 * wedge_angle(PairLengths(x, y))) < 1e-12


@given(arc, arc)
def test_pair_symmetries(x, y):
    lengths = PairLengths(x, y)
    swapped = lengths.swapped()
    assert abs(midpoint_distance(lengths) - midpoint_distance(swapped)) < 1e-14
    assert abs(wedge_angle(lengths) - wedge_angle(swapped)) < 1e-14


@given(arc, arc)
def test_dihedral_angle_range(x, y):
    phi = dihedral_angle(PairLengths(x, y))
    assert 0.0 <= phi <= ACOS_THIRD + 1e-12


@given(arc)
def test_degenerate_pair_loses_nothing(x):
    # a zero-length edge on either side means no smoothing gain
    assert f_pair(PairLengths(x, 0.0)) == 0.0
    assert f_pair(PairLengths(0.0, x)) == 0.0


@given(arc_interior, arc_interior)
def test_smoothing_longer_edge_gains_more(x, y):
    lo, hi = sorted((x, y))
    assert f_pair(PairLengths(lo, hi)) >= f_pair(PairLengths(hi, lo)) - 1e-12


@given(arc_interior, arc_interior)
@settings(max_examples=60)
def test_f_partial_x_matches_finite_differences(x, y):
    h = 1e-6
    fd = (f_pair(PairLengths(x + h, y)) - f_pair(PairLengths(x - h, y))) / (2.0 * h)
    exact = f_partial_x(PairLengths(x, y))
    assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_midpoint_distance_tetrahedron():
    # perpendicular unit edges of the regular tetrahedron sit at 1/sqrt(2)
    d = midpoint_distance(PairLengths(PI3, PI3))
    assert d == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)


def test_circle_intersection_angle_cases():
    # equal circles touching at the equator midpoint
    assert circle_intersection_angle(0.5, 0.5, 1.0) == pytest.approx(
        math.acos((math.cos(1.0) - math.cos(0.5) ** 2) / math.sin(0.5) ** 2), abs=1e-14
    )
    # external tangency puts the contact point opposite the other center
    assert circle_intersection_angle(0.3, 0.4, 0.7) == pytest.approx(math.pi, abs=2e-7)
    # internal tangency puts it on the near side
    assert circle_intersection_angle(0.4, 0.3, 0.1) == pytest.approx(0.0, abs=2e-7)
    with pytest.raises(NoIntersection):
        circle_intersection_angle(0.2, 0.2, 1.0)
    with pytest.raises(GeometryError):
        circle_intersection_angle(-0.2, 0.3, 0.1)


def test_circle_intersection_degenerate_point():
    # zero-radius circle only meets at exact tangency
    assert circle_intersection_angle(0.0, 0.5, 0.5) == 0.0
    with pytest.raises(NoIntersection):
        circle_intersection_angle(0.0, 0.5, 0.8)


def test_geodesic_polygon_area():
    # equilateral spherical triangle of the tetrahedron face normals
    area = geodesic_polygon_area([ACOS_THIRD] * 3)
    assert area == pytest.approx(3.0 * ACOS_THIRD - math.pi, abs=1e-15)
    with pytest.raises(GeometryError):
        geodesic_polygon_area([1.0, 2.0])
    with pytest.raises(GeometryError):
        geodesic_polygon_area([0.1, 0.1, 0.1])


def test_arc_polygon_area_full_circle():
    # a single full circle of euclidean radius r bounds a cap
    for r in (0.2, 0.5, 0.9):
        cap = arc_polygon_area([], [(r, 2.0 * math.pi * r)])
        assert cap == pytest.approx(2.0 * math.pi * (1.0 - math.sqrt(1.0 - r * r)), abs=1e-12)


def test_arc_polygon_area_rejects_bad_radius():
    with pytest.raises(GeometryError):
        arc_polygon_area([], [(1.5, 1.0)])
    with pytest.raises(GeometryError):
        arc_polygon_area([], [(0.0, 1.0)])
