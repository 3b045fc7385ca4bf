"""Shortest paths of the induced path metric inside a polygon domain.

Two independent routes compute the same geodesic:

* :func:`shortest_path` runs the funnel algorithm over the triangle sleeve
  joining the endpoints in the ear-clipping triangulation;
* :func:`visibility_oracle_path` runs Dijkstra over the visibility graph of
  the endpoints and the reflex vertices.

Both work in model coordinates. Klein geodesics are chords and the taut-string
condition at a bend is a sign condition, so the Euclidean combinatorics give
the kappa-geodesic for every kappa <= 0; only the lengths are kappa-metric.
"""

from __future__ import annotations

import bisect
import heapq
import math
from dataclasses import dataclass, field
from functools import cached_property

from .domain import (
    Location,
    PolygonDomain,
    contains,
    locate_triangle,
    point_segment_distance,
    snap_to_boundary,
)
from .errors import ArclengthOutOfRange, PointOutsideDomain
from .model_space import Point, as_point, distance, euclid, interpolation_weight, orient

COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class IntrinsicPath:
    """A geodesic of (E, d-bar): a polyline with its kappa-length."""

    kappa: float
    waypoints: tuple[Point, ...]
    length: float
    legs: tuple[float, ...] = field(repr=False)

    @classmethod
    def from_waypoints(cls, waypoints, kappa: float) -> "IntrinsicPath":
        wps = tuple(as_point(w) for w in waypoints)
        legs = tuple(distance(a, b, kappa) for a, b in zip(wps, wps[1:]))
        return cls(kappa=kappa, waypoints=wps, length=math.fsum(legs), legs=legs)

    @cached_property
    def _cumulative(self) -> list[float]:
        out = [0.0]
        for leg in self.legs:
            out.append(out[-1] + leg)
        return out

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]

    @property
    def bends(self) -> tuple[Point, ...]:
        return self.waypoints[1:-1]

    def bend_arclengths(self) -> list[float]:
        return self._cumulative[1:-1]

    def reversed(self) -> "IntrinsicPath":
        return IntrinsicPath(
            kappa=self.kappa,
            waypoints=self.waypoints[::-1],
            length=self.length,
            legs=self.legs[::-1],
        )

    def _leg_at(self, s: float) -> tuple[int, float]:
        if not (-1e-12 <= s <= self.length + 1e-12 * max(1.0, self.length)):
            raise ArclengthOutOfRange(f"arclength {s} outside [0, {self.length}]")
        if len(self.waypoints) == 1:
            return 0, 0.0
        cum = self._cumulative
        k = min(max(bisect.bisect_right(cum, s) - 1, 0), len(self.legs) - 1)
        leg = self.legs[k]
        t = 0.0 if leg == 0.0 else min(max((s - cum[k]) / leg, 0.0), 1.0)
        return k, interpolation_weight(self.waypoints[k], self.waypoints[k + 1], t, self.kappa)

    def evaluate(self, s: float) -> Point:
        """Point at arclength s from the start."""
        if len(self.waypoints) == 1:
            self._leg_at(s)
            return self.waypoints[0]
        k, lam = self._leg_at(s)
        a, b = self.waypoints[k], self.waypoints[k + 1]
        if lam == 0.0:
            return a
        if lam == 1.0:
            return b
        return Point(a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1]))

    def displacement(self, s: float) -> Point:
        """evaluate(s) - start, computed without subtracting nearby coordinates."""
        if len(self.waypoints) == 1:
            return Point(0.0, 0.0)
        k, lam = self._leg_at(s)
        w0, a, b = self.waypoints[0], self.waypoints[k], self.waypoints[k + 1]
        return Point(
            (a[0] - w0[0]) + lam * (b[0] - a[0]),
            (a[1] - w0[1]) + lam * (b[1] - a[1]),
        )


def evaluate(path: IntrinsicPath, s: float) -> Point:
    return path.evaluate(s)


def prepare_endpoint(domain: PolygonDomain, p) -> Point:
    """Reject exterior points and snap boundary points onto the boundary."""
    p = as_point(p)
    where = contains(domain, p)
    if where is Location.EXTERIOR:
        raise PointOutsideDomain(f"{tuple(p)} lies outside the domain")
    if where is Location.BOUNDARY:
        return snap_to_boundary(domain, p)
    return p


def canonical_waypoints(points) -> list[Point]:
    """Drop repeated points and straight-through waypoints."""
    out: list[Point] = []
    for w in points:
        if out and euclid(out[-1], w) <= COLLINEAR_TOL:
            continue
        out.append(w)
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(1, len(out) - 1):
            a, b, c = out[i - 1], out[i], out[i + 1]
            ac = euclid(a, c)
            if ac == 0.0:
                continue
            height = abs(orient(a, b, c)) / ac
            between = (b[0] - a[0]) * (c[0] - a[0]) + (b[1] - a[1]) * (c[1] - a[1]) >= 0 and (
                b[0] - c[0]
            ) * (a[0] - c[0]) + (b[1] - c[1]) * (a[1] - c[1]) >= 0
            if height <= COLLINEAR_TOL and between:
                del out[i]
                changed = True
                break
    return out


def _funnel(portals: list[tuple[Point, Point]], start: Point, goal: Point) -> list[Point]:
    """Simple stupid funnel over (right, left) portals."""
    portals = [(start, start)] + portals + [(goal, goal)]
    path = [start]
    apex = left = right = start
    apex_i = left_i = right_i = 0
    i = 1
    while i < len(portals):
        new_right, new_left = portals[i]

        if orient(apex, right, new_right) >= 0.0:
            if apex == right or orient(apex, left, new_right) < 0.0:
                right, right_i = new_right, i
            else:
                path.append(left)
                apex, apex_i = left, left_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue

        if orient(apex, left, new_left) <= 0.0:
            if apex == left or orient(apex, right, new_left) > 0.0:
                left, left_i = new_left, i
            else:
                path.append(right)
                apex, apex_i = right, right_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    path.append(goal)
    return path


def _on_portal(p, portal) -> bool:
    a, b = portal
    return point_segment_distance(p, a, b) <= COLLINEAR_TOL * max(1.0, euclid(a, b))


def shortest_path(domain: PolygonDomain, p, q) -> IntrinsicPath:
    """The unique geodesic of the induced path metric from p to q."""
    p, q = prepare_endpoint(domain, p), prepare_endpoint(domain, q)
    if p == q:
        return IntrinsicPath.from_waypoints([p], domain.kappa)
    tri = domain.triangulation
    chain = tri.sleeve(locate_triangle(domain, p), locate_triangle(domain, q))
    vs = domain.vertices
    portals = []
    for t0, t1 in zip(chain, chain[1:]):
        a, b = tri.shared_edge(t0, t1)
        portals.append((vs[a], vs[b]))
    # an endpoint on a diagonal (or at a vertex) would flatten the funnel to
    # a straight angle; start or finish in the next triangle instead
    while portals and _on_portal(p, portals[0]):
        portals.pop(0)
    while portals and _on_portal(q, portals[-1]):
        portals.pop()
    waypoints = canonical_waypoints(_funnel(portals, p, q))
    return IntrinsicPath.from_waypoints(waypoints, domain.kappa)


def intrinsic_distance(domain: PolygonDomain, p, q) -> float:
    return shortest_path(domain, p, q).length


# --- visibility-graph oracle ------------------------------------------------

def segment_in_domain(domain: PolygonDomain, a, b) -> bool:
    """True when the closed segment ab never enters the exterior."""
    a, b = as_point(a), as_point(b)
    dx, dy = b[0] - a[0], b[1] - a[1]
    seg_len = math.hypot(dx, dy)
    if seg_len == 0.0:
        return contains(domain, a) is not Location.EXTERIOR
    tol = domain.tol
    params = [0.0, 1.0]
    for c, d in domain.edges():
        ex, ey = d[0] - c[0], d[1] - c[1]
        den = dx * ey - dy * ex
        if den != 0.0:
            t = ((c[0] - a[0]) * ey - (c[1] - a[1]) * ex) / den
            u = ((c[0] - a[0]) * dy - (c[1] - a[1]) * dx) / den
            if -1e-12 <= u <= 1 + 1e-12 and 0.0 < t < 1.0:
                params.append(t)
        for v in (c, d):
            t = ((v[0] - a[0]) * dx + (v[1] - a[1]) * dy) / (seg_len * seg_len)
            if 0.0 < t < 1.0:
                off = abs((v[0] - a[0]) * dy - (v[1] - a[1]) * dx) / seg_len
                if off <= tol:
                    params.append(t)
    params.sort()
    for t0, t1 in zip(params, params[1:]):
        if (t1 - t0) * seg_len <= tol:
            continue
        tm = 0.5 * (t0 + t1)
        m = (a[0] + tm * dx, a[1] + tm * dy)
        if contains(domain, m) is Location.EXTERIOR:
            return False
    return True


def _reflex_visibility(domain: PolygonDomain) -> dict:
    cache = domain.__dict__.get("_reflex_visibility")
    if cache is None:
        vs = domain.vertices
        ids = domain.reflex
        cache = {}
        for x, i in enumerate(ids):
            for j in ids[x + 1 :]:
                if segment_in_domain(domain, vs[i], vs[j]):
                    w = distance(vs[i], vs[j], domain.kappa)
                    cache.setdefault(i, []).append((j, w))
                    cache.setdefault(j, []).append((i, w))
        domain.__dict__["_reflex_visibility"] = cache
    return cache


def visibility_oracle_path(domain: PolygonDomain, p, q) -> IntrinsicPath:
    """Dijkstra over {p, q} + reflex vertices with kappa-metric edge weights."""
    p, q = prepare_endpoint(domain, p), prepare_endpoint(domain, q)
    kappa = domain.kappa
    if p == q:
        return IntrinsicPath.from_waypoints([p], kappa)
    if segment_in_domain(domain, p, q):
        return IntrinsicPath.from_waypoints([p, q], kappa)
    vs = domain.vertices
    graph = {k: list(v) for k, v in _reflex_visibility(domain).items()}
    start, goal = "p", "q"
    graph[start] = []
    for i in domain.reflex:
        if segment_in_domain(domain, p, vs[i]):
            graph[start].append((i, distance(p, vs[i], kappa)))
        if segment_in_domain(domain, vs[i], q):
            graph.setdefault(i, []).append((goal, distance(vs[i], q, kappa)))
    coords = {start: p, goal: q, **{i: vs[i] for i in domain.reflex}}

    best = {start: 0.0}
    prev: dict = {}
    heap = [(0.0, 0, start)]
    counter = 1
    done = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == goal:
            break
        for v, w in graph.get(u, ()):
            nd = d + w
            if nd < best.get(v, math.inf):
                best[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, counter, v))
                counter += 1
    if goal not in best:
        raise PointOutsideDomain("no visible route between the endpoints")
    chain = [goal]
    while chain[-1] != start:
        chain.append(prev[chain[-1]])
    waypoints = canonical_waypoints(coords[k] for k in reversed(chain))
    return IntrinsicPath.from_waypoints(waypoints, kappa)
