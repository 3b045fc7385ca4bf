"""Closed-form geometry of the model plane M_kappa^2 for kappa <= 0.

kappa == 0 uses Cartesian coordinates. kappa < 0 uses the unit Beltrami-Klein
disk: lines are straight chords, and every length is the curvature -1 length
divided by sqrt(-kappa). Points are plain ``Point`` tuples in model
coordinates, so the same combinatorial predicates (orientation, crossing
tests) serve every curvature.

Lengths that feed angle computations are evaluated with cancellation-free
formulas (half-angle laws of cosines, a sinh-based Klein distance), since the
verifier measures angles of triangles whose sides are ~1e-5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DegenerateAngle,
    DegenerateLine,
    DegenerateSegment,
    DegenerateTriangle,
    InvalidCurvature,
    PointOutsideModel,
    TriangleInequalityViolated,
)

EUCLIDEAN_TOL = 1e-12
HYPERBOLIC_TOL = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class ModelLine(NamedTuple):
    a: Point
    b: Point


class ModelSegment(NamedTuple):
    a: Point
    b: Point


@dataclass(frozen=True)
class ComparisonTriangle:
    p_bar: Point
    q_bar: Point
    r_bar: Point
    a: float  # |p q|
    b: float  # |p r|
    c: float  # |q r|
    kappa: float

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.p_bar, self.q_bar, self.r_bar


def check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa > 0:
        raise InvalidCurvature(f"curvature must be finite and <= 0, got {kappa!r}")
    return kappa


def tolerance(kappa: float) -> float:
    """Default absolute predicate tolerance for a curvature."""
    return EUCLIDEAN_TOL if kappa == 0 else HYPERBOLIC_TOL


def as_point(p) -> Point:
    return Point(float(p[0]), float(p[1]))


def check_point(p, kappa: float) -> Point:
    p = as_point(p)
    if not (math.isfinite(p.x) and math.isfinite(p.y)):
        raise PointOutsideModel(f"non-finite coordinates {tuple(p)}")
    if kappa < 0 and p.x * p.x + p.y * p.y >= 1.0:
        raise PointOutsideModel(f"{tuple(p)} is not inside the unit Klein disk")
    return p


# --- planar helpers (model coordinates) -------------------------------------

def sub(p, q) -> Point:
    return Point(p[0] - q[0], p[1] - q[1])


def dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1]


def cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def orient(a, b, c) -> float:
    """Twice the signed area of (a, b, c); positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def euclid(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def lerp(p, q, lam: float) -> Point:
    return Point(p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1]))


# --- Klein disk internals (curvature -1) ------------------------------------

def _klein_half_cosh_gap(p, q) -> float:
    """cosh(d) - 1 for unit Klein points, without cancellation."""
    if (q[0], q[1]) < (p[0], p[1]):
        p, q = q, p  # bitwise symmetry
    dx, dy = q[0] - p[0], q[1] - p[1]
    # (1 - p.q)^2 - (1-|p|^2)(1-|q|^2) == |q-p|^2 - (p x (q-p))^2
    c = p[0] * dy - p[1] * dx
    num = dx * dx + dy * dy - c * c
    if num <= 0.0:
        return 0.0
    s = math.sqrt((1.0 - dot(p, p)) * (1.0 - dot(q, q)))
    return num / (s * ((1.0 - dot(p, q)) + s))


def _klein_distance(p, q) -> float:
    u = _klein_half_cosh_gap(p, q)
    return 2.0 * math.asinh(math.sqrt(0.5 * u))


def _klein_weight(p, q, t: float, d: float) -> float:
    """Chord parameter of the point a fraction t of the way from p to q."""
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    wa = math.sinh((1.0 - t) * d) / math.sqrt(1.0 - dot(p, p))
    wb = math.sinh(t * d) / math.sqrt(1.0 - dot(q, q))
    return wb / (wa + wb)


def _homog_line(a, b) -> tuple[float, float, float]:
    # (l0, l1, l2) with l0*x + l1*y + l2 == 0 through a and b
    return (a[1] - b[1], b[0] - a[0], a[0] * b[1] - a[1] * b[0])


def _meet(l, m) -> tuple[float, float, float]:
    return (
        l[1] * m[2] - l[2] * m[1],
        l[2] * m[0] - l[0] * m[2],
        l[0] * m[1] - l[1] * m[0],
    )


def _pole(line) -> tuple[float, float, float]:
    # polar of l0 x + l1 y + l2 = 0 with respect to the unit circle
    return (line[0], line[1], -line[2])


def _join_homog(p, h) -> tuple[float, float, float]:
    """Line through the finite point p and the homogeneous point h."""
    ph = (p[0], p[1], 1.0)
    return _meet(ph, h)


# --- metric -----------------------------------------------------------------

def distance(p, q, kappa: float) -> float:
    """Distance in M_kappa^2 between two model points."""
    kappa = check_kappa(kappa)
    p, q = check_point(p, kappa), check_point(q, kappa)
    if kappa == 0:
        return euclid(p, q)
    return _klein_distance(p, q) / math.sqrt(-kappa)


def interpolation_weight(p, q, t: float, kappa: float) -> float:
    """Chord parameter lam with p + lam*(q - p) a fraction t along pq."""
    if kappa == 0:
        return min(max(t, 0.0), 1.0)
    return _klein_weight(p, q, t, _klein_distance(p, q))


def geodesic_interpolate(p, q, t: float, kappa: float) -> Point:
    """Constant-speed point on the segment pq at parameter t in [0, 1]."""
    kappa = check_kappa(kappa)
    p, q = check_point(p, kappa), check_point(q, kappa)
    if euclid(p, q) <= tolerance(kappa) * 1e-3:
        raise DegenerateSegment("cannot interpolate a zero-length segment")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter {t} outside [0, 1]")
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    return lerp(p, q, interpolation_weight(p, q, t, kappa))


# --- lines ------------------------------------------------------------------

def make_line(a, b, kappa: float) -> ModelLine:
    a, b = check_point(a, kappa), check_point(b, kappa)
    if euclid(a, b) <= tolerance(kappa):
        raise DegenerateLine(f"line through coincident points {tuple(a)}")
    return ModelLine(a, b)


def project_to_line(p, line: ModelLine, kappa: float) -> Point:
    """Closest point of ``line`` to ``p`` (the foot of the perpendicular)."""
    kappa = check_kappa(kappa)
    p = check_point(p, kappa)
    a, b = line.a, line.b
    if euclid(a, b) <= tolerance(kappa):
        raise DegenerateLine("degenerate line")
    if kappa == 0:
        d = sub(b, a)
        lam = dot(sub(p, a), d) / dot(d, d)
        return lerp(a, b, lam)
    # Klein: perpendiculars to a chord all pass through its pole.
    l = _homog_line(a, b)
    perp = _join_homog(p, _pole(l))
    if max(abs(v) for v in perp) == 0.0:
        return p  # p is the pole direction itself; only possible when p on line
    x, y, w = _meet(perp, l)
    if w == 0.0:
        return p
    return Point(x / w, y / w)


def _point_on_line_through(p, direction, kappa: float) -> Point:
    """A second point on the line through p with the given model direction."""
    if kappa == 0:
        return Point(p[0] + direction[0], p[1] + direction[1])
    # stay inside the disk: go halfway to where the chord exits
    a = dot(direction, direction)
    b = 2.0 * dot(p, direction)
    c = dot(p, p) - 1.0
    s = (-b + math.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)
    return lerp(p, Point(p[0] + direction[0], p[1] + direction[1]), 0.5 * s)


def parallel_line_at(line: ModelLine, p, kappa: float) -> ModelLine:
    """Line through p perpendicular to the drop from p onto ``line``.

    When p already lies on the line the construction degenerates and the
    line itself is returned.
    """
    kappa = check_kappa(kappa)
    p = check_point(p, kappa)
    foot = project_to_line(p, line, kappa)
    if euclid(p, foot) <= tolerance(kappa):
        return line
    k = sub(foot, p)
    if kappa == 0:
        direction = Point(-k[1], k[0])
    else:
        drop = _homog_line(p, foot)
        perp = _join_homog(p, _pole(drop))
        direction = Point(-perp[1], perp[0])
        norm = math.hypot(*direction)
        direction = Point(direction[0] / norm, direction[1] / norm)
    return ModelLine(p, _point_on_line_through(p, direction, kappa))


# --- angles -----------------------------------------------------------------

def tangent_angle(p, du, dv, kappa: float) -> float:
    """Riemannian angle at p between the chords in model directions du, dv.

    For kappa < 0 the Klein metric at p is
    g(u, v) = u.v / (1-|p|^2) + (p.u)(p.v) / (1-|p|^2)^2, with area factor
    (1-|p|^2)^(-3/2). Overall curvature scaling cancels out of angles.
    """
    nu, nv = math.hypot(*du), math.hypot(*dv)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateAngle("angle with a zero-length side")
    du = (du[0] / nu, du[1] / nu)
    dv = (dv[0] / nv, dv[1] / nv)
    if kappa == 0:
        return math.atan2(abs(cross(du, dv)), dot(du, dv))
    w = 1.0 - dot(p, p)
    g = dot(du, dv) / w + dot(p, du) * dot(p, dv) / (w * w)
    area = abs(cross(du, dv)) / (w * math.sqrt(w))
    return math.atan2(area, g)


def angle_between_segments(p, u, v, kappa: float) -> float:
    """Angle at p between the segments p->u and p->v (tangent-vector route)."""
    kappa = check_kappa(kappa)
    p, u, v = (check_point(x, kappa) for x in (p, u, v))
    tol = tolerance(kappa)
    if euclid(p, u) <= tol * 1e-3 or euclid(p, v) <= tol * 1e-3:
        raise DegenerateAngle("angle with a zero-length side")
    return tangent_angle(p, sub(u, p), sub(v, p), kappa)


def comparison_angle(a: float, b: float, c: float, kappa: float) -> float:
    """Angle between sides a and b of the M_kappa^2 triangle with sides a, b, c.

    Evaluated with the half-angle forms of the (hyperbolic) law of cosines;
    a triangle-inequality defect within tolerance is clamped to 0 or pi.
    """
    kappa = check_kappa(kappa)
    if not (a > 0 and b > 0):
        raise DegenerateAngle(f"comparison angle needs positive sides, got {a}, {b}")
    if c < 0:
        raise TriangleInequalityViolated(f"negative side length {c}")
    tol = tolerance(kappa) * max(1.0, a + b + c)
    if c > a + b + tol or c < abs(a - b) - tol:
        raise TriangleInequalityViolated(f"sides {a}, {b}, {c} do not form a triangle")
    if c >= a + b:
        return math.pi
    if c <= abs(a - b):
        return 0.0
    sa = 0.5 * (b + c - a)
    sb = 0.5 * (a + c - b)
    sc = 0.5 * (a + b - c)
    s = 0.5 * (a + b + c)
    if kappa == 0:
        return 2.0 * math.atan2(math.sqrt(sa * sb), math.sqrt(s * sc))
    k = math.sqrt(-kappa)
    return 2.0 * math.atan2(
        math.sqrt(math.sinh(k * sa) * math.sinh(k * sb)),
        math.sqrt(math.sinh(k * s) * math.sinh(k * sc)),
    )


def outer_angle(p, q, r, kappa: float) -> float:
    """Angle of M_kappa^2 at p between q and r, from the three distances."""
    kappa = check_kappa(kappa)
    p, q, r = (check_point(x, kappa) for x in (p, q, r))
    tol = tolerance(kappa) * 1e-3
    if euclid(p, q) <= tol or euclid(p, r) <= tol:
        raise DegenerateAngle("outer angle needs q != p and r != p")
    return comparison_angle(
        distance(p, q, kappa), distance(p, r, kappa), distance(q, r, kappa), kappa
    )


# --- comparison triangles ---------------------------------------------------

def point_at_distance_from_origin(radius: float, theta: float, kappa: float) -> Point:
    """Model point at M_kappa^2 distance ``radius`` from the origin in direction theta."""
    if kappa == 0:
        rho = radius
    else:
        rho = math.tanh(radius * math.sqrt(-kappa))
    return Point(rho * math.cos(theta), rho * math.sin(theta))


def build_comparison_triangle(a: float, b: float, c: float, kappa: float) -> ComparisonTriangle:
    """Canonical comparison triangle: p at the origin, q on the +x axis, r above.

    ``a = |pq|``, ``b = |pr|``, ``c = |qr|``.
    """
    kappa = check_kappa(kappa)
    if a <= 0 or b <= 0:
        raise DegenerateTriangle(f"comparison triangle needs positive sides, got {a}, {b}, {c}")
    angle = comparison_angle(a, b, c, kappa)
    p_bar = Point(0.0, 0.0)
    q_bar = point_at_distance_from_origin(a, 0.0, kappa)
    r_bar = point_at_distance_from_origin(b, angle, kappa)
    for v in (q_bar, r_bar):
        check_point(v, kappa)
    return ComparisonTriangle(p_bar, q_bar, r_bar, a, b, c, kappa)
