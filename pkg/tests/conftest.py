"""Shared fixtures and frozen reference values.

The constants below were computed once with 30-digit arithmetic from
the closed forms and rounded to double precision; tests compare against
them instead of re-deriving them, so a regression in any formula shows
up as a plain numeric mismatch.
"""

import math

import numpy as np
import pytest

from meissner import (
    build_diameter_graph,
    build_meissner,
    find_dual_pairs,
    regular_pyramid,
    regular_tetrahedron,
)

ACOS_THIRD = 1.23095941734077468

# tetrahedron, all dual pairs at (pi/3, pi/3)
F_TETRA_PAIR = 1.11635670428541018
RECT_TETRA = 1.35934763781648775
WEDGE_TETRA = 0.12838822047571307
SPINDLE_TETRA = 0.11460271305536450
FACE_TRIANGLE_AREA = 0.55128559843253081
TETRA_AREA = 2.93411519432335594
TETRA_VOLUME = 0.41986004596508022
REULEAUX_TETRA_AREA = 2.97547171658440163

# wheel pyramids over n = 2k + 1 base vertices, optimal smoothing
PYRAMID_OBJECTIVE_MAX = 3.19812637933440517
PYR2_OBJECTIVE = 3.15981344068315290
PYR2_AREA = 2.97423640985809279
PYR2_VOLUME = 0.43992065373244865
PYR3_OBJECTIVE = 3.15063239359745826
PYR3_AREA = 2.98385077988365288
PYR3_VOLUME = 0.44472783874522869
PYR4_AREA = 2.98765462600641013

CHORD_HALF_ARC = 0.50536051028415731

PI3 = math.pi / 3


@pytest.fixture(scope="session")
def tetra_vs():
    return regular_tetrahedron()


@pytest.fixture(scope="session")
def tetra_pairs(tetra_vs):
    return find_dual_pairs(build_diameter_graph(tetra_vs), tetra_vs)


@pytest.fixture(scope="session")
def tetra_poly(tetra_vs):
    return build_meissner(tetra_vs)


@pytest.fixture(scope="session")
def pyr2_vs():
    return regular_pyramid(2)


@pytest.fixture(scope="session")
def pyr2_poly(pyr2_vs):
    return build_meissner(pyr2_vs)


@pytest.fixture(scope="session")
def pyr3_vs():
    return regular_pyramid(3)


@pytest.fixture(scope="session")
def pyr3_poly(pyr3_vs):
    return build_meissner(pyr3_vs)


def triangle_center_set() -> np.ndarray:
    """Four coplanar points of diameter one with only three unit distances."""
    h = math.sqrt(3.0) / 2.0
    return np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, h, 0.0],
            [0.5, h / 3.0, 0.0],
        ]
    )
