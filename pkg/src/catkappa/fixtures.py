"""Named test domains and seeded random instance generators."""

from __future__ import annotations

import math
import random

from .domain import Location, PolygonDomain, boundary_distance, contains, validate
from .errors import GeometryError
from .model_space import Point, orient

L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
L_SHAPE_TRIANGLE = [(0.5, 1.75), (1.75, 0.5), (0.25, 0.25)]
L_SHAPE_KLEIN_SCALE = 0.4

# square [0,2]^2 with a thin triangular notch cut down from the top edge to (1, 0.8)
SLIT_TIP = (1.0, 0.8)
SLIT_TRIANGLE = [(0.85, 0.95), (1.6, 1.7), (1.3, 0.1)]
NEEDLE_TRIANGLE = [(0.9, 1.8), (1.1, 1.8), (1.1, 1.2)]
PINCHED = [(0, 0), (1, 0), (1, 1), (0.5, 0.5), (0, 1), (0.5, 0.5)]


def square(side: float = 1.0) -> list[tuple[float, float]]:
    return [(0.0, 0.0), (side, 0.0), (side, side), (0.0, side)]


def slit_square_vertices(aperture: float = 0.033) -> list[tuple[float, float]]:
    """Vertices of the notched square; ``aperture`` is the notch angle at the tip."""
    tx, ty = SLIT_TIP
    half = (2.0 - ty) * math.tan(0.5 * aperture)
    return [(0, 0), (2, 0), (2, 2), (tx + half, 2), (tx, ty), (tx - half, 2), (0, 2)]


def scaled(vertices, factor: float, center=(0.0, 0.0)):
    cx, cy = center
    return [((x - cx) * factor, (y - cy) * factor) for x, y in vertices]


def named_domain(name: str, kappa: float = 0.0) -> PolygonDomain:
    """Built-in domains. For kappa < 0 they are shrunk into the Klein disk."""
    table = {
        "square": square(2.0),
        "l-shape": L_SHAPE,
        "slit-square": slit_square_vertices(),
        "needle-slit": slit_square_vertices(1e-3),
        "pinched": PINCHED,
    }
    if name not in table:
        raise KeyError(f"unknown built-in domain {name!r}")
    vs = table[name]
    if kappa < 0:
        vs = klein_embed(vs)
    return validate(vs, kappa, name=name)


def klein_embed(points):
    """Affine map of the [0,2]^2 fixture frame into the Klein disk."""
    return scaled(points, L_SHAPE_KLEIN_SCALE, center=(1.0, 1.0))


BUILTIN_TRIANGLES = {
    "square": [(0.4, 0.3), (1.7, 0.6), (0.8, 1.6)],
    "l-shape": L_SHAPE_TRIANGLE,
    "slit-square": SLIT_TRIANGLE,
    "needle-slit": NEEDLE_TRIANGLE,
}


def named_triangle(name: str, kappa: float = 0.0) -> list[tuple[float, float]]:
    pts = BUILTIN_TRIANGLES[name]
    return klein_embed(pts) if kappa < 0 else list(pts)


# --- random generators ------------------------------------------------------

def random_convex_polygon(rng: random.Random, n: int, radius: float = 0.85) -> list[Point]:
    while True:
        angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n))
        gaps = [(angles[(i + 1) % n] - angles[i]) % (2.0 * math.pi) for i in range(n)]
        if min(gaps) > 0.15 and max(gaps) < math.pi - 0.1:
            return [Point(radius * math.cos(a), radius * math.sin(a)) for a in angles]


def random_star_polygon(
    rng: random.Random, n: int, radius: float = 0.85, inner: float = 0.3
) -> list[Point]:
    """Star-shaped (hence simple) polygon about the origin; usually has reflex vertices.

    Radii are drawn from [inner, 1] * radius, so a small ``inner`` gives deep spikes.
    """
    base = [2.0 * math.pi * (i + rng.uniform(0.15, 0.85)) / n for i in range(n)]
    return [
        Point(r * math.cos(a), r * math.sin(a))
        for a, r in ((a, radius * rng.uniform(inner, 1.0)) for a in base)
    ]


def random_two_opt_polygon(rng: random.Random, n: int, radius: float = 0.85) -> list[Point]:
    """Random points in a disk, reordered by 2-opt moves until the polygon is simple.

    Each move strictly shortens the perimeter, so the loop terminates; the
    result is usually far from star-shaped.
    """
    pts = []
    while len(pts) < n:
        x, y = rng.uniform(-radius, radius), rng.uniform(-radius, radius)
        if math.hypot(x, y) < radius:
            pts.append(Point(x, y))
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                a, b, c, d = pts[i], pts[i + 1], pts[j], pts[(j + 1) % n]
                if _segments_cross(a, b, c, d):
                    pts[i + 1 : j + 1] = reversed(pts[i + 1 : j + 1])
                    changed = True
    return pts


def _segments_cross(a, b, c, d) -> bool:
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def random_domain(
    rng: random.Random,
    kappa: float,
    n_min: int = 5,
    n_max: int = 12,
    convex: bool = False,
    inner: float = 0.3,
    kind: str | None = None,
) -> PolygonDomain:
    """Seeded random valid domain; ``kind`` is "convex", "star" (default) or "two-opt"."""
    kind = kind or ("convex" if convex else "star")
    makers = {
        "convex": random_convex_polygon,
        "star": lambda r, n: random_star_polygon(r, n, inner=inner),
        "two-opt": random_two_opt_polygon,
    }
    while True:
        n = rng.randint(n_min, n_max)
        vs = makers[kind](rng, n)
        try:
            return validate(vs, kappa, name=f"random-{kind}-{n}")
        except GeometryError:
            continue


def random_interior_point(rng: random.Random, domain: PolygonDomain, margin: float = 1e-6) -> Point:
    xs = [v[0] for v in domain.vertices]
    ys = [v[1] for v in domain.vertices]
    while True:
        p = Point(rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        if contains(domain, p) is Location.INTERIOR and boundary_distance(domain, p) > margin:
            return p


def random_point_in_triangulation(rng: random.Random, domain: PolygonDomain) -> Point:
    """Uniform triangle of the triangulation, then a uniform point inside it.

    Unlike area sampling this reaches narrow spikes as often as the core.
    """
    a, b, c = (domain.vertices[i] for i in rng.choice(domain.triangulation.triangles))
    while True:
        u, v = rng.random(), rng.random()
        if u + v < 1.0:
            break
    w = 1.0 - u - v
    # keep away from the edges so the point is strictly interior
    u, v, w = (0.9 * x + 0.1 / 3 for x in (u, v, w))
    return Point(u * a[0] + v * b[0] + w * c[0], u * a[1] + v * b[1] + w * c[1])
