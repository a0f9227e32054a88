from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from evenfarey.errors import DegeneratePolygon, ParallelDirections
from evenfarey.geometry import (
    ConvexPolygon,
    HalfPlane,
    Point,
    Tag,
    cone_clip_area,
    format_rational,
    locate,
    parallelogram,
    parse_rational,
    point,
)

UNIT = ConvexPolygon.box(0, 1, 0, 1)
T1 = ConvexPolygon.from_vertices([(0, 1), (F(1, 3), F(2, 3)), (1, 1)])

rationals = st.fractions(min_value=-2, max_value=2, max_denominator=12)


def vset(poly):
    return {(p.x, p.y) for p in poly.vertices}


def test_rational_format_roundtrip():
    assert format_rational(F(3)) == "3/1"
    assert format_rational(F(-2, 4)) == "-1/2"
    assert parse_rational("6/8") == F(3, 4)
    assert parse_rational("0.25") == F(1, 4)
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(TypeError):
        point(0.5, 1)


def test_clip_examples():
    assert vset(UNIT.clip(HalfPlane(1, 0, 0))) == vset(UNIT)
    tri = UNIT.clip(HalfPlane(1, 1, -1))
    assert vset(tri) == {(1, 0), (0, 1), (1, 1)}
    assert tri.area() == F(1, 2)
    # y <= 2/3 leaves only the lowest vertex of T_1
    pt = T1.clip(HalfPlane(0, -1, F(2, 3)))
    assert pt.vertices == (Point(F(1, 3), F(2, 3)),)
    assert pt.area() == 0


def test_areas():
    assert T1.area() == F(1, 6)
    assert ConvexPolygon.empty().area() == 0
    assert ConvexPolygon.from_vertices([(0, 0), (1, 1), (2, 2)]).area() == 0


def test_orientation_is_normalised():
    cw = ConvexPolygon.from_vertices([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert cw.area() == 1
    assert vset(cw) == vset(UNIT)


def test_locate_examples():
    assert locate(T1, point(F(1, 2), F(5, 6))).tag is Tag.INTERIOR
    loc = locate(T1, point(F(1, 3), F(2, 3)))
    assert loc.tag is Tag.AT_VERTEX
    assert T1.vertices[loc.index] == (F(1, 3), F(2, 3))
    assert locate(T1, point(0, 0)).tag is Tag.OUTSIDE
    assert locate(T1, point(F(1, 2), 1)).tag is Tag.ON_EDGE
    assert str(loc).startswith("vertex:")
    with pytest.raises(DegeneratePolygon):
        locate(ConvexPolygon.from_vertices([(0, 0), (1, 0)]), point(0, 0))


def test_strict_edges_respected():
    half_open = ConvexPolygon.from_halfplanes([HalfPlane(1, 0, F(-1, 2), strict=True)])
    assert not half_open.contains(point(F(1, 2), F(1, 2)))
    assert half_open.closure_contains(point(F(1, 2), F(1, 2)))
    assert half_open.contains(point(F(3, 4), F(1, 2)))


@given(rationals, rationals, rationals, st.booleans())
def test_clip_idempotent(a, b, c, strict):
    if a == 0 and b == 0:
        a = F(1)
    h = HalfPlane(a, b, c, strict)
    once = UNIT.clip(h)
    twice = once.clip(h)
    assert once.vertices == twice.vertices
    assert once.area() == twice.area()


@given(rationals, rationals, rationals)
def test_clip_complement_areas(a, b, c):
    if a == 0 and b == 0:
        b = F(1)
    h = HalfPlane(a, b, c)
    poly = ConvexPolygon.from_vertices([(0, 0), (2, 0), (F(5, 2), 1), (1, 2), (-1, 1)])
    assert poly.clip(h).area() + poly.clip(h.complement()).area() == poly.area()


@given(st.fractions(0, 1, max_denominator=20), st.fractions(0, 1, max_denominator=20))
def test_locate_matches_clip(x, y):
    p = point(x, y)
    loc = locate(UNIT, p)
    if loc.tag is Tag.INTERIOR:
        # the clip keeps a neighbourhood of p, so p stays interior
        sub = UNIT.clip(HalfPlane(1, 0, -x + F(1, 100)))
        assert locate(sub, p).tag is Tag.INTERIOR
    assert (loc.tag is Tag.OUTSIDE) == (not UNIT.closure_contains(p))


def test_parallelogram_area():
    for pr, pr1 in ((1, 0), (2, 1), (5, 3), (7, 11)):
        assert parallelogram(pr, pr1).area() == F(4, pr)
        assert parallelogram(pr, pr1, eta=F(1, 10)).area() == F(4, 100 * pr)


def test_cone_clip_area_examples():
    # T_2 at (1, 1): the cone runs from the edge towards (1/3, 2/3) round to (1, 2/3)
    v = point(1, 1)
    assert cone_clip_area(v, point(F(-2, 3), F(-1, 3)), point(0, F(-1, 3)), 2, 1) == F(1, 2)
    from evenfarey.tessellation import vertex_alphas

    alphas = {(w.vertex.x, w.vertex.y): w.alpha for w in vertex_alphas((2,))}
    assert alphas[(1, 1)] == F(1, 2)
    alphas = {(w.vertex.x, w.vertex.y): w.alpha for w in vertex_alphas((1, 6, 1))}
    assert alphas[(F(3, 7), F(5, 7))] == F(11, 60)


def test_straight_angle_halves_probe():
    for pr, pr1 in ((1, 0), (3, 2), (4, 5)):
        area = cone_clip_area(point(0, 0), point(1, 0), point(-1, 0), pr, pr1)
        assert area == F(2, pr)


def test_parallel_directions_rejected():
    with pytest.raises(ParallelDirections):
        cone_clip_area(point(0, 0), point(1, 1), point(2, 2), 1, 0)
    with pytest.raises(ParallelDirections):
        cone_clip_area(point(0, 0), point(0, 0), point(1, 0), 1, 0)
