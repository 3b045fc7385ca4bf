"""Numerical CAT(kappa) certificates for polygon domains in model spaces."""

from .cat_verifier import (
    AngleEstimate,
    CheckReport,
    GeodesicTriangle,
    alexandrov_angle_estimate,
    angle_equality_check,
    angle_triangle_inequality_check,
    build_triangle,
    cat_check,
    hull_containment_check,
    limit_outer_angle_estimate,
)
from .domain import Location, PolygonDomain, Triangulation, contains, triangulate, validate
from .errors import GeometryError
from .intrinsic_geodesics import (
    IntrinsicPath,
    evaluate,
    intrinsic_distance,
    shortest_path,
    visibility_oracle_path,
)
from .model_space import (
    ComparisonTriangle,
    ModelLine,
    ModelSegment,
    Point,
    build_comparison_triangle,
    comparison_angle,
    distance,
    geodesic_interpolate,
    make_line,
    outer_angle,
    parallel_line_at,
    project_to_line,
)
from .suite import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
