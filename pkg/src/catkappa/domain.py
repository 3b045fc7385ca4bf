"""Simple geodesic polygons in model coordinates.

A :class:`PolygonDomain` is the finite stand-in for a closed, simply connected
region of M_kappa^2. Because lines are straight in both the Cartesian and the
Klein charts, validation, point location and triangulation are purely
Euclidean computations on the model coordinates; only lengths depend on kappa.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    CollinearDegenerate,
    DuplicateVertex,
    PointOutsideModel,
    SelfIntersecting,
    TooFewVertices,
    TriangulationFailed,
)
from .model_space import Point, as_point, check_kappa, check_point, euclid, orient, sub, dot

DEFAULT_TOL = 1e-9


class Location(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


def signed_area(vertices) -> float:
    n = len(vertices)
    s = 0.0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def point_segment_distance(p, a, b) -> float:
    d = sub(b, a)
    dd = dot(d, d)
    if dd == 0.0:
        return euclid(p, a)
    lam = min(1.0, max(0.0, dot(sub(p, a), d) / dd))
    return math.hypot(p[0] - a[0] - lam * d[0], p[1] - a[1] - lam * d[1])


def closest_point_on_segment(p, a, b) -> Point:
    d = sub(b, a)
    dd = dot(d, d)
    if dd == 0.0:
        return Point(*a)
    lam = min(1.0, max(0.0, dot(sub(p, a), d) / dd))
    return Point(a[0] + lam * d[0], a[1] + lam * d[1])


def _proper_cross(a, b, c, d) -> bool:
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return ((o1 > 0 > o2) or (o1 < 0 < o2)) and ((o3 > 0 > o4) or (o3 < 0 < o4))


def segment_distance(a, b, c, d) -> float:
    """Euclidean distance between the closed segments ab and cd."""
    if _proper_cross(a, b, c, d):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    # diagonal (i, j) with i < j -> the two triangles sharing it
    diagonals: dict = field(compare=False, repr=False)

    def shared_edge(self, t0: int, t1: int) -> tuple[int, int]:
        """Edge of t0 shared with t1, in t0's counterclockwise order."""
        a, b, c = self.triangles[t0]
        other = set(self.triangles[t1])
        for u, v in ((a, b), (b, c), (c, a)):
            if u in other and v in other:
                return u, v
        raise TriangulationFailed(f"triangles {t0} and {t1} are not adjacent")

    def sleeve(self, start: int, goal: int) -> list[int]:
        """Triangle chain between two triangles (unique path in the dual tree)."""
        if start == goal:
            return [start]
        parent = {start: -1}
        queue = deque([start])
        while queue:
            t = queue.popleft()
            if t == goal:
                break
            for u in self.adjacency[t]:
                if u not in parent:
                    parent[u] = t
                    queue.append(u)
        if goal not in parent:
            raise TriangulationFailed("dual graph is disconnected")
        chain = [goal]
        while chain[-1] != start:
            chain.append(parent[chain[-1]])
        chain.reverse()
        return chain


@dataclass(frozen=True)
class PolygonDomain:
    """A validated simple polygon, counterclockwise, without holes.

    Build instances with :func:`validate`; the constructor trusts its input.
    """

    kappa: float
    vertices: tuple[Point, ...]
    tol: float = DEFAULT_TOL
    name: str = field(default="", compare=False)
    reversed_input: bool = field(default=False, compare=False)
    collinear: tuple[int, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    @cached_property
    def area(self) -> float:
        return signed_area(self.vertices)

    @cached_property
    def reflex(self) -> tuple[int, ...]:
        """Indices of vertices with interior angle exceeding pi."""
        vs, n = self.vertices, len(self.vertices)
        out = []
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            scale = euclid(a, b) * euclid(b, c)
            if orient(a, b, c) < -1e-12 * scale:
                out.append(i)
        return tuple(out)

    @cached_property
    def triangulation(self) -> Triangulation:
        return triangulate(self)

    def is_convex(self) -> bool:
        return not self.reflex

    def with_kappa(self, kappa: float) -> "PolygonDomain":
        return validate(self.vertices, kappa, tol=self.tol, name=self.name)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kappa": self.kappa,
            "vertices": len(self.vertices),
            "reversed_input": self.reversed_input,
            "collinear_vertices": list(self.collinear),
            "reflex_vertices": list(self.reflex),
            "area_model": self.area,
        }


def validate(vertices, kappa: float, tol: float = DEFAULT_TOL, name: str = "") -> PolygonDomain:
    """Check the polygon hypotheses and return a counterclockwise domain."""
    kappa = check_kappa(kappa)
    pts = [as_point(v) for v in vertices]
    if len(pts) < 3:
        raise TooFewVertices(f"a polygon needs at least 3 vertices, got {len(pts)}")
    for v in pts:
        try:
            check_point(v, kappa)
        except PointOutsideModel as exc:
            raise PointOutsideModel(f"vertex {tuple(v)} lies outside the model") from exc
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if euclid(pts[i], pts[j]) <= tol:
                raise DuplicateVertex(f"vertices {i} and {j} coincide within {tol}")

    collinear = []
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        lab, lbc = euclid(a, b), euclid(b, c)
        # height of b over the line ac, measured against the tolerance
        if abs(orient(a, b, c)) <= tol * max(lab, lbc):
            if dot(sub(a, b), sub(c, b)) > 0:
                raise CollinearDegenerate(f"edges at vertex {i} fold back on each other")
            collinear.append(i)

    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            c, d = pts[j], pts[(j + 1) % n]
            if segment_distance(a, b, c, d) <= tol:
                raise SelfIntersecting(f"edges {i} and {j} intersect")

    area = signed_area(pts)
    if abs(area) <= tol * tol:
        raise CollinearDegenerate("polygon has zero area")
    reversed_input = area < 0
    if reversed_input:
        pts.reverse()
        collinear = sorted(n - 1 - i for i in collinear)
    return PolygonDomain(
        kappa=kappa,
        vertices=tuple(pts),
        tol=tol,
        name=name,
        reversed_input=reversed_input,
        collinear=tuple(collinear),
    )


def boundary_distance(domain: PolygonDomain, p) -> float:
    return min(point_segment_distance(p, a, b) for a, b in domain.edges())


def _winding_inside(vertices, p) -> bool:
    # crossing-number test; callers handle points on the boundary first
    x, y = p
    inside = False
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if xc > x:
                inside = not inside
    return inside


def contains(domain: PolygonDomain, p, tol: float | None = None) -> Location:
    """Classify p as Interior, Boundary (within ``tol``) or Exterior."""
    tol = domain.tol if tol is None else tol
    p = as_point(p)
    if boundary_distance(domain, p) <= tol:
        return Location.BOUNDARY
    return Location.INTERIOR if _winding_inside(domain.vertices, p) else Location.EXTERIOR


def snap_to_boundary(domain: PolygonDomain, p) -> Point:
    best, best_d = Point(*p), math.inf
    for a, b in domain.edges():
        c = closest_point_on_segment(p, a, b)
        d = euclid(c, p)
        if d < best_d:
            best, best_d = c, d
    return best


def triangulate(domain: PolygonDomain) -> Triangulation:
    """Ear-clipping triangulation with a symmetric dual adjacency."""
    vs = domain.vertices
    n = len(vs)
    idx = list(range(n))
    tris: list[tuple[int, int, int]] = []
    guard = 0
    while len(idx) > 3:
        m = len(idx)
        clipped = False
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = vs[i0], vs[i1], vs[i2]
            scale = max(euclid(a, b), euclid(b, c), euclid(a, c))
            if orient(a, b, c) <= 1e-12 * scale * scale:
                continue
            if any(
                _in_closed_triangle(vs[j], a, b, c)
                for j in idx
                if j not in (i0, i1, i2)
            ):
                continue
            tris.append((i0, i1, i2))
            del idx[k]
            clipped = True
            break
        guard += 1
        if not clipped or guard > 4 * n:
            raise TriangulationFailed(f"no ear found with {len(idx)} vertices left")
    tris.append(tuple(idx))
    if len(tris) != n - 2:
        raise TriangulationFailed(f"expected {n - 2} triangles, got {len(tris)}")

    owners: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            owners.setdefault((min(u, v), max(u, v)), []).append(t)
    adjacency: list[list[int]] = [[] for _ in tris]
    diagonals = {}
    for key, ts in owners.items():
        if len(ts) == 2:
            t0, t1 = ts
            adjacency[t0].append(t1)
            adjacency[t1].append(t0)
            diagonals[key] = (t0, t1)
        elif len(ts) > 2:
            raise TriangulationFailed(f"edge {key} shared by {len(ts)} triangles")
    if len(diagonals) != n - 3:
        raise TriangulationFailed("dual graph is not a tree")
    return Triangulation(
        triangles=tuple(tris),
        adjacency=tuple(tuple(a) for a in adjacency),
        diagonals=diagonals,
    )


def _in_closed_triangle(p, a, b, c) -> bool:
    eps = 1e-14
    return orient(a, b, p) >= -eps and orient(b, c, p) >= -eps and orient(c, a, p) >= -eps


def locate_triangle(domain: PolygonDomain, p) -> int:
    """Index of a triangle of the triangulation containing p (best effort on seams)."""
    vs = domain.vertices
    best, best_score = 0, -math.inf
    for t, (i, j, k) in enumerate(domain.triangulation.triangles):
        a, b, c = vs[i], vs[j], vs[k]
        score = min(
            orient(a, b, p) / euclid(a, b),
            orient(b, c, p) / euclid(b, c),
            orient(c, a, p) / euclid(c, a),
        )
        if score >= 0.0:
            return t
        # signed distances, so the fallback picks the nearest triangle
        if score > best_score:
            best, best_score = t, score
    return best
