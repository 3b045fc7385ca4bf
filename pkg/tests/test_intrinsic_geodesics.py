import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catkappa import fixtures
from catkappa.domain import Location, contains, validate
from catkappa.errors import ArclengthOutOfRange, PointOutsideDomain
from catkappa.intrinsic_geodesics import (
    IntrinsicPath,
    evaluate,
    intrinsic_distance,
    segment_in_domain,
    shortest_path,
    visibility_oracle_path,
)
from catkappa.model_space import distance, geodesic_interpolate

# visibility-graph Dijkstra on the L-shape: 2 * sqrt(0.5^2 + 0.75^2)
L_LENGTH = 1.8027756377319946
L_P, L_Q = (0.5, 1.75), (1.75, 0.5)

seeds = st.integers(0, 2**32 - 1)
kappas = st.sampled_from([0.0, -0.5, -1.0])


def random_instance(seed, kappa, kind="two-opt"):
    rng = random.Random(seed)
    d = fixtures.random_domain(rng, kappa, 5, 12, kind=kind)
    return rng, d


class TestLShape:
    def test_path(self):
        d = fixtures.named_domain("l-shape")
        path = shortest_path(d, L_P, L_Q)
        assert path.waypoints == (L_P, (1.0, 1.0), L_Q)
        assert path.length == pytest.approx(1.8027756377, abs=1e-9)
        assert path.length == pytest.approx(L_LENGTH, abs=1e-15)

    def test_oracle_identical(self):
        d = fixtures.named_domain("l-shape")
        assert visibility_oracle_path(d, L_P, L_Q).waypoints == shortest_path(d, L_P, L_Q).waypoints

    def test_bend_at_half_length(self):
        d = fixtures.named_domain("l-shape")
        path = shortest_path(d, L_P, L_Q)
        assert evaluate(path, 0.9013878189) == pytest.approx((1.0, 1.0), abs=1e-9)

    def test_klein_copy(self):
        d = fixtures.named_domain("l-shape", -1.0)
        p, q = fixtures.klein_embed([L_P, L_Q])
        bend = fixtures.klein_embed([(1.0, 1.0)])[0]
        path = shortest_path(d, p, q)
        assert path.waypoints[1] == pytest.approx(bend)
        assert path.length == pytest.approx(distance(p, bend, -1.0) + distance(bend, q, -1.0), rel=1e-14)


class TestBasics:
    def test_same_point(self):
        d = fixtures.named_domain("l-shape")
        path = shortest_path(d, (0.5, 0.5), (0.5, 0.5))
        assert path.waypoints == ((0.5, 0.5),) and path.length == 0.0
        assert path.evaluate(0.0) == (0.5, 0.5)
        assert intrinsic_distance(d, (0.5, 0.5), (0.5, 0.5)) == 0.0

    def test_outside(self):
        d = fixtures.named_domain("l-shape")
        with pytest.raises(PointOutsideDomain):
            shortest_path(d, (1.5, 1.5), (0.5, 0.5))
        with pytest.raises(PointOutsideDomain):
            visibility_oracle_path(d, (0.5, 0.5), (3, 3))

    def test_boundary_endpoints(self):
        d = fixtures.named_domain("l-shape")
        path = shortest_path(d, (0.5, 2.0), (2.0, 0.5))
        assert path.bends == ((1.0, 1.0),)

    def test_arclength_range(self):
        path = shortest_path(fixtures.named_domain("square"), (0.2, 0.2), (1.0, 1.8))
        with pytest.raises(ArclengthOutOfRange):
            path.evaluate(path.length * 1.01)
        with pytest.raises(ArclengthOutOfRange):
            path.evaluate(-0.1)
        assert path.evaluate(0.0) == (0.2, 0.2)
        assert path.evaluate(path.length) == (1.0, 1.8)

    @pytest.mark.parametrize("kappa", [0.0, -1.0])
    def test_straight_midpoint(self, kappa):
        d = fixtures.named_domain("square", kappa)
        p, q = fixtures.klein_embed([(0.2, 0.3), (1.7, 1.5)]) if kappa else ((0.2, 0.3), (1.7, 1.5))
        path = shortest_path(d, p, q)
        assert len(path.waypoints) == 2
        assert path.evaluate(0.5 * path.length) == pytest.approx(geodesic_interpolate(p, q, 0.5, kappa), abs=1e-14)

    def test_reversed(self):
        d = fixtures.named_domain("slit-square")
        path = shortest_path(d, (0.5, 1.5), (1.5, 1.5))
        back = path.reversed()
        assert back.waypoints == path.waypoints[::-1]
        assert back.length == path.length

    def test_from_waypoints(self):
        path = IntrinsicPath.from_waypoints([(0, 0), (3, 4), (3, 0)], 0.0)
        assert path.length == 9.0 and path.bend_arclengths() == [5.0]

    def test_segment_in_domain(self):
        d = fixtures.named_domain("l-shape")
        assert segment_in_domain(d, (0.5, 0.5), (0.5, 1.9))
        assert not segment_in_domain(d, L_P, L_Q)
        # grazing the reflex vertex from inside
        assert segment_in_domain(d, (0.5, 1.5), (1.5, 0.5))


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(seeds, kappas)
    def test_convex_identity(self, seed, kappa):
        rng, d = random_instance(seed, kappa, "convex")
        for _ in range(5):
            p, q = fixtures.random_interior_point(rng, d), fixtures.random_interior_point(rng, d)
            path = shortest_path(d, p, q)
            assert len(path.waypoints) == 2
            assert path.length == pytest.approx(distance(p, q, kappa), abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(seeds, kappas, st.sampled_from(["star", "two-opt"]))
    def test_oracle_unique_and_reflex(self, seed, kappa, kind):
        rng, d = random_instance(seed, kappa, kind)
        reflex = {d.vertices[i] for i in d.reflex}
        for _ in range(5):
            p = fixtures.random_point_in_triangulation(rng, d)
            q = fixtures.random_point_in_triangulation(rng, d)
            path = shortest_path(d, p, q)
            oracle = visibility_oracle_path(d, p, q)
            assert path.length == pytest.approx(oracle.length, abs=1e-9)
            back = shortest_path(d, q, p)
            assert len(back.waypoints) == len(path.waypoints)
            for a, b in zip(path.waypoints, back.waypoints[::-1]):
                assert math.dist(a, b) <= 1e-9
            assert set(path.bends) <= reflex
            assert path.length >= distance(p, q, kappa) - 1e-12

    @settings(max_examples=60, deadline=None)
    @given(seeds, kappas)
    def test_triangle_inequality(self, seed, kappa):
        rng, d = random_instance(seed, kappa)
        for _ in range(5):
            p, q, r = (fixtures.random_point_in_triangulation(rng, d) for _ in range(3))
            assert intrinsic_distance(d, p, r) <= intrinsic_distance(d, p, q) + intrinsic_distance(d, q, r) + 1e-9

    @settings(max_examples=60, deadline=None)
    @given(seeds, kappas, st.floats(0.0, 1.0))
    def test_subpaths_are_geodesic(self, seed, kappa, frac):
        rng, d = random_instance(seed, kappa)
        p = fixtures.random_point_in_triangulation(rng, d)
        q = fixtures.random_point_in_triangulation(rng, d)
        path = shortest_path(d, p, q)
        s = frac * path.length
        x = path.evaluate(s)
        assert contains(d, x) is not Location.EXTERIOR
        assert intrinsic_distance(d, p, x) == pytest.approx(s, abs=1e-9)
        assert intrinsic_distance(d, x, q) == pytest.approx(path.length - s, abs=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(seeds, kappas)
    def test_legs_inside_and_bends_taut(self, seed, kappa):
        rng, d = random_instance(seed, kappa)
        for _ in range(5):
            p = fixtures.random_point_in_triangulation(rng, d)
            q = fixtures.random_point_in_triangulation(rng, d)
            path = shortest_path(d, p, q)
            w = path.waypoints
            for a, b in zip(w, w[1:]):
                assert segment_in_domain(d, a, b)
            # a chord across a bend, from points a quarter of a leg or more
            # away from it, must leave the domain or the path could be shortened
            for k in range(1, len(w) - 1):
                x = tuple(w[k][i] + 0.3 * (w[k - 1][i] - w[k][i]) for i in (0, 1))
                y = tuple(w[k][i] + 0.3 * (w[k + 1][i] - w[k][i]) for i in (0, 1))
                assert not segment_in_domain(d, x, y)


@pytest.mark.parametrize("name", ["l-shape", "slit-square", "needle-slit"])
@pytest.mark.parametrize("kappa", [0.0, -1.0])
def test_fixture_sides_match_oracle(name, kappa):
    d = fixtures.named_domain(name, kappa)
    pts = fixtures.named_triangle(name, kappa)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        path = shortest_path(d, pts[a], pts[b])
        oracle = visibility_oracle_path(d, pts[a], pts[b])
        assert len(path.waypoints) == len(oracle.waypoints)
        assert max(math.dist(u, v) for u, v in zip(path.waypoints, oracle.waypoints)) <= 1e-12
        assert path.length == pytest.approx(oracle.length, abs=1e-12)


def test_square_domain_kappa_switch():
    d = validate([(0, 0), (0.5, 0), (0.5, 0.5), (0, 0.5)], 0.0)
    h = d.with_kappa(-1.0)
    assert intrinsic_distance(h, (0.1, 0.1), (0.4, 0.4)) > intrinsic_distance(d, (0.1, 0.1), (0.4, 0.4))
