"""Meissner polyhedra: constant-width bodies built from extremal point sets.

A set of m points with diameter one and 2m - 2 unit distances determines
a ball polyhedron whose sharp edges come in dual pairs.  Smoothing one
edge of each pair yields a body of constant width one.  This package
validates such point sets, evaluates surface area and volume in closed
form, cross-checks the formulas by Monte Carlo integration, tessellates
the bodies into watertight triangle meshes, and searches for vertex
configurations minimizing the surface area.
"""

from .errors import (
    DiameterViolation,
    EmptySystem,
    FaceCycleError,
    GeometryError,
    InfeasibleStart,
    MeissnerError,
    NoIntersection,
    NotAWheel,
    NotExtremal,
    ParseError,
    TooManyPairs,
    ValidationError,
    ValidationMismatch,
    WrongPairCount,
)
from .generate import load_vertex_file, regular_pyramid, regular_tetrahedron, save_vertex_file
from .mesh import (
    TriangleMesh,
    euler_characteristic,
    mesh_area,
    tessellate,
    tessellate_reuleaux,
    unit_sphere_mesh,
    write_mesh,
)
from .montecarlo import BallSystem, McResult, mc_volume, width_samples
from .optimize import (
    TETRAHEDRON_AREA,
    TETRAHEDRON_VOLUME,
    OptimizationProblem,
    OptimizationReport,
    RestartRecord,
    optimize_meissner,
    optimize_pyramid,
    pyramid_objective,
    random_feasible_pyramid,
)
from .polytope import (
    Arc,
    DiameterGraph,
    DualEdgePair,
    DualPairGeometry,
    MeissnerPolyhedron,
    SmoothingChoice,
    SurfaceDecomposition,
    SurfacePatch,
    VertexSet,
    build_diameter_graph,
    build_meissner,
    direction_sphere_partition,
    dual_pair_indices,
    enumerate_smoothings,
    face_cycles,
    find_dual_pairs,
    meissner_area,
    meissner_volume,
    optimal_smoothing,
    reuleaux_area,
    surface_decomposition,
    validate_vertex_set,
)
from .sphere import (
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

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "MeissnerError",
    "GeometryError",
    "NoIntersection",
    "ValidationError",
    "DiameterViolation",
    "NotExtremal",
    "WrongPairCount",
    "FaceCycleError",
    "TooManyPairs",
    "EmptySystem",
    "ParseError",
    "ValidationMismatch",
    "NotAWheel",
    "InfeasibleStart",
    "PairLengths",
    "chord_to_arc",
    "dihedral_angle",
    "midpoint_distance",
    "wedge_angle",
    "rect_area",
    "wedge_area",
    "spindle_area",
    "f_pair",
    "f_partial_x",
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
    "regular_tetrahedron",
    "regular_pyramid",
    "load_vertex_file",
    "save_vertex_file",
    "BallSystem",
    "McResult",
    "mc_volume",
    "width_samples",
    "TriangleMesh",
    "tessellate",
    "tessellate_reuleaux",
    "mesh_area",
    "euler_characteristic",
    "write_mesh",
    "unit_sphere_mesh",
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
