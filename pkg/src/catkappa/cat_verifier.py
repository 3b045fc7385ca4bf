"""Numerical certificates for geodesic triangles in a polygon domain.

Every check returns a :class:`CheckReport`; the estimators return an
:class:`AngleEstimate` holding the full scale sequence so that limits are
reported together with the evidence for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .domain import PolygonDomain, point_segment_distance, segment_distance
from .errors import DegenerateTriangle, ScaleTooLarge
from .intrinsic_geodesics import IntrinsicPath, intrinsic_distance, prepare_endpoint, shortest_path
from .model_space import (
    Point,
    build_comparison_triangle,
    check_kappa,
    comparison_angle,
    cross,
    distance,
    dot,
    euclid,
    geodesic_interpolate,
    orient,
    tangent_angle,
)

VERTICES = ("p", "q", "r")
SIMPLE_TOL = 1e-9
MONOTONE_SLACK = 1e-12
DEFAULT_STEPS = 12
DEFAULT_GRID = 8


@dataclass
class GeodesicTriangle:
    domain: PolygonDomain
    p: Point
    q: Point
    r: Point
    sides: tuple[IntrinsicPath, IntrinsicPath, IntrinsicPath]  # pq, qr, rp
    simple: bool
    _distances: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def kappa(self) -> float:
        return self.domain.kappa

    def vertex(self, name: str) -> Point:
        return {"p": self.p, "q": self.q, "r": self.r}[name]

    def rays(self, name: str) -> tuple[IntrinsicPath, IntrinsicPath]:
        """The two sides issuing from a vertex, oriented away from it."""
        pq, qr, rp = self.sides
        if name == "p":
            return pq, rp.reversed()
        if name == "q":
            return qr, pq.reversed()
        if name == "r":
            return rp, qr.reversed()
        raise KeyError(f"vertex must be one of {VERTICES}, got {name!r}")

    @property
    def side_lengths(self) -> tuple[float, float, float]:
        return tuple(s.length for s in self.sides)

    def describe(self) -> dict:
        return {
            "vertices": [list(self.p), list(self.q), list(self.r)],
            "side_lengths": list(self.side_lengths),
            "bends": [len(s.bends) for s in self.sides],
            "simple": self.simple,
        }


@dataclass(frozen=True)
class AngleEstimate:
    scales: tuple[float, ...]
    values: tuple[float, ...]
    extrapolated: float
    monotone: bool


@dataclass
class CheckReport:
    check: str
    instance: str
    samples: int
    max_violation: float
    tolerance: float
    passed: bool
    diagnostics: dict = field(default_factory=dict)
    skipped: bool = False

    def to_record(self) -> dict:
        # stable key order: the report file is diffed byte for byte
        return {
            "check": self.check,
            "instance": self.instance,
            "samples": self.samples,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "skipped": self.skipped,
            "diagnostics": self.diagnostics,
        }


# --- triangles --------------------------------------------------------------

def _polyline_segments(path: IntrinsicPath):
    w = path.waypoints
    return list(zip(w, w[1:]))


def _sides_touch_only_at_start(a: IntrinsicPath, b: IntrinsicPath, tol: float) -> bool:
    """Do two polylines issuing from the same point meet anywhere else?"""
    sa, sb = _polyline_segments(a), _polyline_segments(b)
    (a0, a1), (b0, b1) = sa[0], sb[0]
    da = (a1[0] - a0[0], a1[1] - a0[1])
    db = (b1[0] - b0[0], b1[1] - b0[1])
    na, nb = math.hypot(*da), math.hypot(*db)
    # first legs leave along a common ray: they overlap beyond the shared vertex
    if abs(cross(da, db)) <= 1e-12 * na * nb and dot(da, db) > 0:
        return False
    for i, (u0, u1) in enumerate(sa):
        for j, (v0, v1) in enumerate(sb):
            if i == 0 and j == 0:
                continue
            if segment_distance(u0, u1, v0, v1) <= tol:
                return False
    return True


def is_simple_triangle(sides, tol: float = SIMPLE_TOL) -> bool:
    """True iff the union of the three side traces is a simple closed curve."""
    pq, qr, rp = sides
    pairs = (
        (pq, rp.reversed()),  # meet at p
        (qr, pq.reversed()),  # meet at q
        (rp, qr.reversed()),  # meet at r
    )
    return all(_sides_touch_only_at_start(a, b, tol) for a, b in pairs)


def build_triangle(domain: PolygonDomain, p, q, r) -> GeodesicTriangle:
    p, q, r = (prepare_endpoint(domain, v) for v in (p, q, r))
    for u, v in ((p, q), (q, r), (r, p)):
        if euclid(u, v) <= domain.tol:
            raise DegenerateTriangle(f"coincident triangle vertices {tuple(u)}")
    sides = (shortest_path(domain, p, q), shortest_path(domain, q, r), shortest_path(domain, r, p))
    return GeodesicTriangle(domain, p, q, r, sides, is_simple_triangle(sides))


# --- the comparison inequality ----------------------------------------------

def cat_check(
    triangle: GeodesicTriangle,
    kappa: float | None = None,
    n_samples: int = 64,
    tol: float = 1e-9,
    instance: str = "",
) -> CheckReport:
    """d-bar(v, x) <= d_kappa(v_bar, x_bar) for sample points x on each side.

    The comparison point x_bar sits at the same arclength along the
    corresponding side of the comparison triangle.
    """
    kappa = triangle.kappa if kappa is None else check_kappa(kappa)
    pq, qr, rp = triangle.sides
    cmp = build_comparison_triangle(pq.length, rp.length, qr.length, kappa)
    plan = (
        ("pq", pq, cmp.p_bar, cmp.q_bar, triangle.r, cmp.r_bar),
        ("qr", qr, cmp.q_bar, cmp.r_bar, triangle.p, cmp.p_bar),
        ("rp", rp, cmp.r_bar, cmp.p_bar, triangle.q, cmp.q_bar),
    )
    worst = -math.inf
    offenders = []
    count = 0
    for name, side, a_bar, b_bar, v, v_bar in plan:
        for j in range(1, n_samples + 1):
            frac = j / (n_samples + 1)
            s = side.length * frac
            x = side.evaluate(s)
            x_bar = geodesic_interpolate(a_bar, b_bar, frac, kappa)
            lhs = intrinsic_distance(triangle.domain, v, x)
            rhs = distance(v_bar, x_bar, kappa)
            excess = lhs - rhs
            count += 1
            offenders.append((excess, name, s, lhs, rhs))
            worst = max(worst, excess)
    offenders.sort(key=lambda o: (-o[0], o[1], o[2]))
    max_violation = max(0.0, worst)
    return CheckReport(
        check="cat",
        instance=instance,
        samples=count,
        max_violation=max_violation,
        tolerance=tol,
        passed=max_violation <= tol,
        diagnostics={
            "kappa": kappa,
            "simple": triangle.simple,
            "max_excess": worst,
            "worst": [
                {"side": n, "arclength": s, "intrinsic": l, "comparison": r}
                for _, n, s, l, r in offenders[:3]
            ],
        },
    )


# --- angle estimators -------------------------------------------------------

def default_scales(lengths, finest: float | None = None, steps: int = DEFAULT_STEPS) -> list[float]:
    """Geometric scales t0 * 2^-k from t0 = min(lengths) / 4.

    With ``finest`` the sequence is continued down to exactly that value.
    """
    t0 = min(lengths) / 4.0
    if finest is None:
        return [t0 * 2.0 ** -k for k in range(steps)]
    if finest >= t0:
        return [finest]
    out = []
    t = t0
    while t > finest * (1 + 1e-9):
        out.append(t)
        t *= 0.5
    out.append(finest)
    return out


def _check_scales(scales, limit: float) -> tuple[float, ...]:
    scales = tuple(float(s) for s in scales)
    if not scales:
        raise ValueError("at least one scale is required")
    if any(s <= 0 for s in scales) or any(b >= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be positive and strictly decreasing")
    if scales[0] >= limit:
        raise ScaleTooLarge(f"scale {scales[0]} is not below the side length {limit}")
    return scales


def _monotone(values, slack: float = MONOTONE_SLACK) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def outer_angle_sequence(sigma: IntrinsicPath, tau: IntrinsicPath, scales) -> AngleEstimate:
    """Outer angles at the common start of sigma and tau at matching arclengths.

    The angle of M_kappa^2 at the apex is measured between the chord
    directions to sigma(t) and tau(t); the displacements are formed from the
    waypoints, not by subtracting two nearly equal positions.
    """
    apex = sigma.start
    values = tuple(
        tangent_angle(apex, sigma.displacement(t), tau.displacement(t), sigma.kappa)
        for t in scales
    )
    return AngleEstimate(tuple(scales), values, values[-1], _monotone(values))


def limit_outer_angle_estimate(triangle: GeodesicTriangle, vertex: str, scales=None) -> AngleEstimate:
    sigma, tau = triangle.rays(vertex)
    if scales is None:
        scales = default_scales((sigma.length, tau.length))
    return outer_angle_sequence(sigma, tau, _check_scales(scales, min(sigma.length, tau.length)))


def _pair_distances(domain, sigma, tau, scales, grid, cache) -> list[list[tuple[float, float, float]]]:
    out = []
    for scale in scales:
        rows = []
        for j in range(1, grid + 1):
            t = scale * j / grid
            for jj in range(1, grid + 1):
                u = scale * jj / grid
                key = (t, u)
                c = cache.get(key)
                if c is None:
                    c = intrinsic_distance(domain, sigma.evaluate(t), tau.evaluate(u))
                    cache[key] = c
                rows.append((t, u, c))
        out.append(rows)
    return out


def alexandrov_sequence(
    domain: PolygonDomain,
    sigma: IntrinsicPath,
    tau: IntrinsicPath,
    scales,
    grid: int = DEFAULT_GRID,
    k_comparison: float | None = None,
    cache: dict | None = None,
) -> AngleEstimate:
    """Sup of comparison angles of (apex, sigma(t), tau(t')) over a grid per scale."""
    if grid < 1:
        raise ValueError("grid must be at least 1")
    kc = domain.kappa if k_comparison is None else check_kappa(k_comparison)
    cache = {} if cache is None else cache
    values = []
    for rows in _pair_distances(domain, sigma, tau, scales, grid, cache):
        # d-bar(apex, sigma(t)) == t because sigma is a unit-speed geodesic
        values.append(max(comparison_angle(t, u, c, kc) for t, u, c in rows))
    values = tuple(values)
    return AngleEstimate(tuple(scales), values, values[-1], _monotone(values))


def alexandrov_angle_estimate(
    triangle: GeodesicTriangle,
    vertex: str,
    scales=None,
    grid: int = DEFAULT_GRID,
    k_comparison: float | None = None,
) -> AngleEstimate:
    sigma, tau = triangle.rays(vertex)
    if scales is None:
        scales = default_scales((sigma.length, tau.length))
    scales = _check_scales(scales, min(sigma.length, tau.length))
    cache = triangle._distances.setdefault(vertex, {})
    return alexandrov_sequence(triangle.domain, sigma, tau, scales, grid, k_comparison, cache)


def vertex_comparison_angle(triangle: GeodesicTriangle, vertex: str, kappa: float | None = None) -> float:
    """Angle at the vertex of the full comparison triangle."""
    kappa = triangle.kappa if kappa is None else kappa
    sigma, tau = triangle.rays(vertex)
    pq, qr, rp = triangle.sides
    opposite = {"p": qr, "q": rp, "r": pq}[vertex]
    return comparison_angle(sigma.length, tau.length, opposite.length, kappa)


def angle_equality_check(
    triangle: GeodesicTriangle,
    vertex: str,
    scales=None,
    tol: float = 1e-3,
    grid: int = DEFAULT_GRID,
    k_comparison: float | None = None,
    instance: str = "",
) -> CheckReport:
    """Limit outer angle against the Alexandrov angle at one vertex."""
    outer = limit_outer_angle_estimate(triangle, vertex, scales)
    alex = alexandrov_angle_estimate(triangle, vertex, outer.scales, grid, k_comparison)
    diff = abs(outer.extrapolated - alex.extrapolated)
    return CheckReport(
        check="angles",
        instance=instance,
        samples=len(outer.scales),
        max_violation=diff,
        tolerance=tol,
        passed=diff <= tol,
        diagnostics={
            "vertex": vertex,
            "limit_outer_angle": outer.extrapolated,
            "alexandrov_angle": alex.extrapolated,
            "outer_monotone": outer.monotone,
            "finest_scale": outer.scales[-1],
            "outer_values": list(outer.values),
            "alexandrov_values": list(alex.values),
        },
    )


# --- convex hull containment ------------------------------------------------

def _distance_to_closed_triangle(x, a, b, c) -> float:
    if orient(a, b, c) < 0:
        b, c = c, b
    if orient(a, b, x) >= 0 and orient(b, c, x) >= 0 and orient(c, a, x) >= 0:
        return 0.0
    return min(
        point_segment_distance(x, a, b),
        point_segment_distance(x, b, c),
        point_segment_distance(x, c, a),
    )


def hull_containment_check(
    triangle: GeodesicTriangle, n_samples: int = 128, tol: float = 1e-9, instance: str = ""
) -> CheckReport:
    """Every side point lies in the model triangle spanned by the vertices.

    Model triangles are straight in Cartesian and Klein coordinates alike, so
    the test is three orientation checks regardless of kappa.
    """
    a, b, c = triangle.p, triangle.q, triangle.r
    worst, count, offenders = 0.0, 0, []
    for name, side in zip(("pq", "qr", "rp"), triangle.sides):
        points = [side.evaluate(side.length * j / (n_samples - 1)) for j in range(n_samples)] if n_samples > 1 else [side.start]
        points.extend(side.bends)
        for x in points:
            d = _distance_to_closed_triangle(x, a, b, c)
            count += 1
            if d > 0:
                offenders.append({"side": name, "point": list(x), "outside_by": d})
            worst = max(worst, d)
    inside = []
    for side in triangle.sides:
        for w in side.bends:
            o = (orient(a, b, w), orient(b, c, w), orient(c, a, w))
            inside.append(all(v > 0 for v in o) or all(v < 0 for v in o))
    return CheckReport(
        check="hull",
        instance=instance,
        samples=count,
        max_violation=worst,
        tolerance=tol,
        passed=worst <= tol,
        diagnostics={
            "simple": triangle.simple,
            "bends_strictly_inside": inside,
            "violations": sum(1 for o in offenders if o["outside_by"] > tol),
            "worst": sorted(offenders, key=lambda o: -o["outside_by"])[:3],
        },
    )


# --- angle triangle inequality ----------------------------------------------

def angle_triangle_inequality_check(
    domain: PolygonDomain,
    p,
    targets,
    scales=None,
    grid: int = DEFAULT_GRID,
    tol: float = 1e-3,
    k_comparison: float | None = None,
    instance: str = "",
) -> CheckReport:
    """Alexandrov angles between three geodesics from p obey the triangle inequality."""
    p = prepare_endpoint(domain, p)
    paths = [shortest_path(domain, p, t) for t in targets]
    if len(paths) != 3:
        raise ValueError("exactly three targets are required")
    if any(path.length <= domain.tol for path in paths):
        raise DegenerateTriangle("a target coincides with the apex")
    if scales is None:
        scales = default_scales([path.length for path in paths])
    scales = _check_scales(scales, min(path.length for path in paths))
    pairs = ((0, 1), (0, 2), (1, 2))
    angles = {}
    for i, j in pairs:
        est = alexandrov_sequence(domain, paths[i], paths[j], scales, grid, k_comparison)
        angles[(i, j)] = est.extrapolated
    a01, a02, a12 = angles[(0, 1)], angles[(0, 2)], angles[(1, 2)]
    excess = max(a12 - (a01 + a02), a01 - (a02 + a12), a02 - (a01 + a12))
    violation = max(0.0, excess)
    return CheckReport(
        check="angle-triangle",
        instance=instance,
        samples=3 * len(scales) * grid * grid,
        max_violation=violation,
        tolerance=tol,
        passed=violation <= tol,
        diagnostics={
            "angles": {"01": a01, "02": a02, "12": a12},
            "max_excess": excess,
            "finest_scale": scales[-1],
        },
    )
